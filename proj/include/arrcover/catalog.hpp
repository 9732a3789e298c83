#pragma once

#include "poset.hpp"

#include <array>
#include <map>
#include <string>
#include <vector>

namespace arrcover {

namespace detail {

inline Scalar quad5(const Field& f, const BigRat& a, const BigRat& b) {
    Scalar s;
    s.a = a;
    s.b = b;
    (void)f;
    return s;
}

inline Hyperplane line2(const Field& f, Scalar nx, Scalar ny, Scalar c0, std::string label) {
    Hyperplane h;
    h.normal = {std::move(nx), std::move(ny)};
    h.c0 = std::move(c0);
    h.label = std::move(label);
    (void)f;
    return h;
}

// The 15 affine lines over Q(sqrt5), five directions times offsets
// {r1, r2 (one class), b (the other)}, indexed 1..15 so that {1..10} is the
// r-class and {11..15} the b-class. Coordinates live in the basis {1, zeta}
// of the pentagonal plane: the line with direction index k and offset c is
// cos(72k) * p + cos(72(k-1)) * q = c, and all entries lie in Q(sqrt5).
inline Arrangement icosi_decone_build() {
    Field f(FieldContext::quad(5));
    const Scalar one = f.one();
    // cos 72 = (sqrt5 - 1)/4, cos 144 = -(sqrt5 + 1)/4
    const Scalar A = quad5(f, BigRat(-1, 4), BigRat(1, 4));
    const Scalar B = quad5(f, BigRat(-1, 4), BigRat(-1, 4));
    const Scalar normals[5][2] = {
        {one, A},  // k = 0
        {A, one},  // k = 1
        {B, A},    // k = 2
        {B, B},    // k = 3
        {A, B},    // k = 4
    };
    const Scalar r1 = quad5(f, BigRat(1, 4), BigRat(1, 4));   // (1+sqrt5)/4
    const Scalar r2 = quad5(f, BigRat(-1), BigRat(1, 2));     // (sqrt5-2)/2
    const Scalar b = quad5(f, BigRat(1, 4), BigRat(-1, 4));   // -(sqrt5-1)/4

    struct Spec { int dir; const Scalar* off; };
    const Spec order[15] = {
        {4, &r1}, {4, &r2}, {2, &r2}, {2, &r1}, {0, &r1},
        {0, &r2}, {3, &r2}, {3, &r1}, {1, &r1}, {1, &r2},
        {4, &b}, {2, &b}, {0, &b}, {3, &b}, {1, &b},
    };
    std::vector<Hyperplane> planes;
    for (int i = 0; i < 15; ++i) {
        const auto& [dir, off] = order[i];
        planes.push_back(line2(f, normals[dir][0], normals[dir][1], f.neg(*off),
                               std::to_string(i + 1)));
    }
    return make_arrangement(f, 2, std::move(planes));
}

// Construction-time structure check: the cone's rank-2 flats may only have
// multiplicity 2 or 4, and every quadruple must take two hyperplanes from
// {1..10} and two from {11..16}.
inline void icosi_validate(const Arrangement& coned) {
    Rank2Census census = rank2_census(coned);
    for (const auto& [mult, count] : census.table) {
        (void)count;
        if (mult != 2 && mult != 4)
            throw Error("icosidodecahedral construction broken: rank-2 flat of multiplicity " +
                        std::to_string(mult));
    }
    for (SubsetMask flat : census.flats) {
        std::vector<int> idx = mask_indices(flat);
        if (idx.size() != 4) continue;
        int low = 0;
        for (int i : idx)
            if (i <= 10) ++low;
        if (low != 2)
            throw Error("icosidodecahedral construction broken: a quadruple flat has " +
                        std::to_string(low) + " members among indices 1..10");
    }
    if (census.table[2] != 30 || census.table[4] != 15)
        throw Error("icosidodecahedral construction broken: census is not 30 doubles + 15 quadruples");
}

inline const Arrangement& icosi_decone16() {
    static const Arrangement a = [] {
        Arrangement dec = icosi_decone_build();
        icosi_validate(cone(dec, "16"));
        return dec;
    }();
    return a;
}

inline const Arrangement& icosi_cone() {
    static const Arrangement a = cone(icosi_decone16(), "16");
    return a;
}

}  // namespace detail

// 16 central planes in dimension 3 whose normals are the icosahedron's six
// 5-fold axes and ten 3-fold axes. Cross-check model: poset-isomorphic to the
// coned 15-line construction.
inline Arrangement icosidodecahedral_from_axes() {
    Field f(FieldContext::quad(5));
    const BigRat h(1, 2), th(3, 2);
    auto q = [&](BigRat a, BigRat b) { return detail::quad5(f, std::move(a), std::move(b)); };
    const Scalar zero = f.zero(), one = f.one(), mone = f.from_int(-1);
    const Scalar phi = q(h, h), phi2 = q(th, h);

    std::vector<std::array<Scalar, 3>> normals;
    // 5-fold: cyclic permutations of (0, +-1, phi)
    normals.push_back({zero, one, phi});
    normals.push_back({zero, mone, phi});
    normals.push_back({phi, zero, one});
    normals.push_back({phi, zero, mone});
    normals.push_back({one, phi, zero});
    normals.push_back({mone, phi, zero});
    // 3-fold: (+-1, +-1, 1) type
    normals.push_back({one, one, one});
    normals.push_back({one, one, mone});
    normals.push_back({one, mone, one});
    normals.push_back({mone, one, one});
    // 3-fold: cyclic permutations of (+-1, 0, phi^2)
    normals.push_back({one, zero, phi2});
    normals.push_back({mone, zero, phi2});
    normals.push_back({phi2, one, zero});
    normals.push_back({phi2, mone, zero});
    normals.push_back({zero, phi2, one});
    normals.push_back({zero, phi2, mone});

    std::vector<Hyperplane> planes;
    for (std::size_t i = 0; i < normals.size(); ++i) {
        Hyperplane hp;
        hp.normal = {normals[i][0], normals[i][1], normals[i][2]};
        hp.c0 = f.zero();
        hp.label = "P" + std::to_string(i + 1);
        planes.push_back(std::move(hp));
    }
    return make_arrangement(f, 3, std::move(planes));
}

inline std::vector<std::string> catalog_names() {
    return {
        "boolean:<l>", "pencil:<n>", "generic:<n>", "braid:<l>",
        "icosidodecahedral", "icosidodecahedral-decone-16", "icosidodecahedral-decone-1",
    };
}

inline Arrangement catalog_get(const std::string& name) {
    auto param = [&](const std::string& prefix, long long lo, long long hi) -> long long {
        std::string tail = name.substr(prefix.size());
        std::size_t used = 0;
        long long v = -1;
        try {
            v = std::stoll(tail, &used);
        } catch (...) {
            throw Error("bad parameter in catalog name '" + name + "'");
        }
        if (used != tail.size() || v < lo || v > hi)
            throw Error("catalog parameter out of range in '" + name + "' (expected " +
                        std::to_string(lo) + ".." + std::to_string(hi) + ")");
        return v;
    };

    if (name.rfind("boolean:", 0) == 0) {
        long long l = param("boolean:", 1, 20);
        Field f{FieldContext::rationals()};
        std::vector<Hyperplane> planes;
        for (long long i = 0; i < l; ++i) {
            Hyperplane h;
            h.normal.assign(l, f.zero());
            h.normal[i] = f.one();
            h.c0 = f.zero();
            h.label = "x" + std::to_string(i + 1);
            planes.push_back(std::move(h));
        }
        return make_arrangement(f, l, std::move(planes));
    }
    if (name.rfind("pencil:", 0) == 0) {
        // n concurrent lines through the origin of C^2: x = k y, k = 0..n-1
        long long n = param("pencil:", 1, 26);
        Field f{FieldContext::rationals()};
        std::vector<Hyperplane> planes;
        for (long long k = 0; k < n; ++k) {
            Hyperplane h;
            h.normal = {f.one(), f.from_int(-k)};
            h.c0 = f.zero();
            h.label = "L" + std::to_string(k + 1);
            planes.push_back(std::move(h));
        }
        return make_arrangement(f, 2, std::move(planes));
    }
    if (name.rfind("generic:", 0) == 0) {
        // tangents to the parabola y = x^2: no two parallel, no three concurrent
        long long n = param("generic:", 1, 26);
        Field f{FieldContext::rationals()};
        std::vector<Hyperplane> planes;
        for (long long i = 1; i <= n; ++i) {
            Hyperplane h;
            h.normal = {f.from_int(2 * i), f.from_int(-1)};
            h.c0 = f.from_int(-i * i);
            h.label = "T" + std::to_string(i);
            planes.push_back(std::move(h));
        }
        return make_arrangement(f, 2, std::move(planes));
    }
    if (name.rfind("braid:", 0) == 0) {
        // coordinate hyperplanes, then differences x_i - x_j in lex order
        long long l = param("braid:", 1, 6);
        Field f{FieldContext::rationals()};
        std::vector<Hyperplane> planes;
        for (long long i = 0; i < l; ++i) {
            Hyperplane h;
            h.normal.assign(l, f.zero());
            h.normal[i] = f.one();
            h.c0 = f.zero();
            h.label = "x" + std::to_string(i + 1);
            planes.push_back(std::move(h));
        }
        for (long long i = 0; i < l; ++i)
            for (long long j = i + 1; j < l; ++j) {
                Hyperplane h;
                h.normal.assign(l, f.zero());
                h.normal[i] = f.one();
                h.normal[j] = f.from_int(-1);
                h.c0 = f.zero();
                h.label = "x" + std::to_string(i + 1) + "-x" + std::to_string(j + 1);
                planes.push_back(std::move(h));
            }
        return make_arrangement(f, l, std::move(planes));
    }
    if (name == "icosidodecahedral") return detail::icosi_cone();
    if (name == "icosidodecahedral-decone-16") return detail::icosi_decone16();
    if (name == "icosidodecahedral-decone-1") return decone(detail::icosi_cone(), 1);
    throw Error("unknown catalog name '" + name + "'");
}

// Concrete instances exercised by the test suite.
inline std::vector<std::string> catalog_roster() {
    return {
        "boolean:1", "boolean:2", "boolean:3",
        "pencil:3", "pencil:4", "pencil:5", "pencil:6",
        "generic:3", "generic:4", "generic:5",
        "braid:2", "braid:3",
        "icosidodecahedral", "icosidodecahedral-decone-16", "icosidodecahedral-decone-1",
    };
}

struct CatalogGolden {
    std::string name;
    std::vector<long long> betti;
    std::map<std::size_t, std::size_t> census;  // empty when not pinned
};

inline std::vector<CatalogGolden> catalog_goldens() {
    return {
        {"boolean:1", {1, 1}, {}},
        {"boolean:2", {1, 2, 1}, {{2, 1}}},
        {"boolean:3", {1, 3, 3, 1}, {{2, 3}}},
        {"pencil:3", {1, 3, 2}, {{3, 1}}},
        {"pencil:4", {1, 4, 3}, {{4, 1}}},
        {"pencil:5", {1, 5, 4}, {{5, 1}}},
        {"pencil:6", {1, 6, 5}, {{6, 1}}},
        {"generic:3", {1, 3, 3}, {{2, 3}}},
        {"generic:4", {1, 4, 6}, {{2, 6}}},
        {"generic:5", {1, 5, 10}, {{2, 10}}},
        {"braid:2", {1, 3, 2}, {{3, 1}}},
        {"braid:3", {1, 6, 11, 6}, {{2, 3}, {3, 4}}},
        {"icosidodecahedral", {1, 16, 75, 60}, {{2, 30}, {4, 15}}},
        {"icosidodecahedral-decone-16", {1, 15, 60}, {{2, 30}, {4, 10}}},
        {"icosidodecahedral-decone-1", {1, 15, 60}, {}},
    };
}

}  // namespace arrcover
