#pragma once

#include "matrix.hpp"

#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

namespace arrcover {

// Bitmask over hyperplane indices: bit i <-> hyperplane i+1 (1-based in reports).
using SubsetMask = std::uint32_t;

inline SubsetMask mask_of(std::initializer_list<int> indices) {
    SubsetMask m = 0;
    for (int i : indices) m |= SubsetMask(1) << (i - 1);
    return m;
}

inline std::vector<int> mask_indices(SubsetMask m) {
    std::vector<int> out;
    for (int i = 0; m; ++i, m >>= 1)
        if (m & 1) out.push_back(i + 1);
    return out;
}

// The hyperplane { c1 x1 + ... + cl xl + c0 = 0 }, stored in canonical
// primitive form: first nonzero coefficient scaled to 1.
struct Hyperplane {
    std::vector<Scalar> normal;
    Scalar c0;
    std::string label;
};

struct Arrangement {
    Field field;  // geometry field
    std::size_t dim = 0;
    std::vector<Hyperplane> planes;  // order fixes e_i indexing, never re-sorted

    std::size_t n() const { return planes.size(); }

    bool central() const {
        for (const auto& h : planes)
            if (!field.is_zero(h.c0)) return false;
        return true;
    }
};

namespace detail {

inline Hyperplane canonicalize(const Field& f, Hyperplane h) {
    std::size_t lead = h.normal.size();
    for (std::size_t j = 0; j < h.normal.size(); ++j)
        if (!f.is_zero(h.normal[j])) { lead = j; break; }
    if (lead == h.normal.size()) throw Error("hyperplane '" + h.label + "' has zero normal");
    Scalar inv = f.inv(h.normal[lead]);
    for (auto& c : h.normal) c = f.mul(c, inv);
    h.c0 = f.mul(h.c0, inv);
    return h;
}

inline bool same_hyperplane(const Field& f, const Hyperplane& x, const Hyperplane& y) {
    if (x.normal.size() != y.normal.size()) return false;
    for (std::size_t j = 0; j < x.normal.size(); ++j)
        if (!f.equal(x.normal[j], y.normal[j])) return false;
    return f.equal(x.c0, y.c0);
}

}  // namespace detail

inline Arrangement make_arrangement(Field field, std::size_t dim,
                                    std::vector<Hyperplane> planes) {
    Arrangement a;
    a.field = std::move(field);
    a.dim = dim;
    for (auto& h : planes) {
        if (h.normal.size() != dim)
            throw Error("hyperplane '" + h.label + "' has " + std::to_string(h.normal.size()) +
                        " coefficients, expected " + std::to_string(dim));
        Hyperplane canon = detail::canonicalize(a.field, std::move(h));
        for (const auto& prev : a.planes)
            if (detail::same_hyperplane(a.field, prev, canon))
                throw Error("duplicate hyperplane '" + canon.label + "' (same as '" + prev.label + "')");
        a.planes.push_back(std::move(canon));
    }
    return a;
}

// ---- file format ----------------------------------------------------------
// line 1: "field Q" | "field Fp <p>" | "field Qsqrt <d>"
// line 2: "dim <l>"
// then:   "H <label>: c1 c2 ... cl c0"    ("#" starts a comment)

inline Arrangement parse_arrangement(const std::string& text) {
    std::vector<std::pair<int, std::string>> lines;
    {
        std::istringstream in(text);
        std::string raw;
        int no = 0;
        while (std::getline(in, raw)) {
            ++no;
            if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
            std::size_t b = raw.find_first_not_of(" \t\r");
            if (b == std::string::npos) continue;
            std::size_t e = raw.find_last_not_of(" \t\r");
            lines.emplace_back(no, raw.substr(b, e - b + 1));
        }
    }
    auto fail = [](int line, const std::string& msg) -> Error {
        return Error("line " + std::to_string(line) + ": " + msg);
    };
    if (lines.empty()) throw Error("empty arrangement file");

    std::size_t cur = 0;
    Field field;
    {
        auto [no, line] = lines[cur++];
        std::istringstream in(line);
        std::string kw, kindtok;
        in >> kw >> kindtok;
        if (kw != "field" || kindtok.empty()) throw fail(no, "expected 'field Q|Fp <p>|Qsqrt <d>'");
        if (kindtok == "Q") {
            field = Field(FieldContext::rationals());
        } else if (kindtok == "Fp" || kindtok == "Qsqrt") {
            long long v = -1;
            if (!(in >> v) || v < 0) throw fail(no, "expected a parameter after '" + kindtok + "'");
            try {
                field = Field(kindtok == "Fp" ? FieldContext::prime(static_cast<std::uint32_t>(v))
                                              : FieldContext::quad(static_cast<std::uint32_t>(v)));
            } catch (const Error& e) {
                throw fail(no, e.what());
            }
        } else {
            throw fail(no, "unknown field '" + kindtok + "'");
        }
        std::string extra;
        if (in >> extra) throw fail(no, "trailing tokens after field declaration");
    }
    if (cur >= lines.size()) throw Error("missing 'dim' line");
    std::size_t dim = 0;
    {
        auto [no, line] = lines[cur++];
        std::istringstream in(line);
        std::string kw;
        long long v = -1;
        in >> kw >> v;
        if (kw != "dim" || v < 1) throw fail(no, "expected 'dim <positive integer>'");
        dim = static_cast<std::size_t>(v);
    }

    std::vector<Hyperplane> planes;
    std::vector<int> line_of;
    for (; cur < lines.size(); ++cur) {
        auto [no, line] = lines[cur];
        if (line.size() < 2 || line[0] != 'H' || (line[1] != ' ' && line[1] != '\t'))
            throw fail(no, "expected 'H <label>: coefficients'");
        std::size_t colon = line.find(':');
        if (colon == std::string::npos) throw fail(no, "missing ':' after hyperplane label");
        std::string label = line.substr(2, colon - 2);
        std::size_t b = label.find_first_not_of(" \t");
        if (b == std::string::npos) throw fail(no, "empty hyperplane label");
        label = label.substr(b, label.find_last_not_of(" \t") - b + 1);

        std::istringstream in(line.substr(colon + 1));
        std::vector<Scalar> coeffs;
        std::string tok;
        while (in >> tok) {
            try {
                coeffs.push_back(field.parse(tok));
            } catch (const Error& e) {
                throw fail(no, e.what());
            }
        }
        if (coeffs.size() != dim + 1)
            throw fail(no, "expected " + std::to_string(dim + 1) + " coefficients, got " +
                               std::to_string(coeffs.size()));
        Hyperplane h;
        h.c0 = coeffs.back();
        coeffs.pop_back();
        h.normal = std::move(coeffs);
        h.label = std::move(label);
        planes.push_back(std::move(h));
        line_of.push_back(no);
    }

    try {
        return make_arrangement(field, dim, std::move(planes));
    } catch (const Error& e) {
        throw Error(std::string(e.what()) + " (in arrangement file)");
    }
}

inline std::string serialize_arrangement(const Arrangement& a) {
    std::string out;
    switch (a.field.kind()) {
        case FieldKind::Rationals: out = "field Q\n"; break;
        case FieldKind::Prime: out = "field Fp " + std::to_string(a.field.context().p) + "\n"; break;
        case FieldKind::QuadExt: out = "field Qsqrt " + std::to_string(a.field.context().d) + "\n"; break;
    }
    out += "dim " + std::to_string(a.dim) + "\n";
    for (const auto& h : a.planes) {
        out += "H " + h.label + ":";
        for (const auto& c : h.normal) out += " " + a.field.str(c);
        out += " " + a.field.str(h.c0) + "\n";
    }
    return out;
}

// ---- coning / deconing ----------------------------------------------------

inline Arrangement cone(const Arrangement& a, const std::string& infinity_label = "inf") {
    std::vector<Hyperplane> planes;
    planes.reserve(a.n() + 1);
    for (const auto& h : a.planes) {
        Hyperplane c;
        c.normal = h.normal;
        c.normal.push_back(h.c0);  // c0 becomes the coefficient of the new coordinate
        c.c0 = a.field.zero();
        c.label = h.label;
        planes.push_back(std::move(c));
    }
    Hyperplane inf;
    inf.normal.assign(a.dim + 1, a.field.zero());
    inf.normal.back() = a.field.one();
    inf.c0 = a.field.zero();
    inf.label = infinity_label;
    planes.push_back(std::move(inf));
    return make_arrangement(a.field, a.dim + 1, std::move(planes));
}

// Sends hyperplane i (1-based) to infinity: restrict to the chart {alpha_i = 1},
// solving for the variable at alpha_i's leading coefficient. Exact and
// deterministic; decone(cone(a), n+1) reproduces a literally.
inline Arrangement decone(const Arrangement& a, std::size_t i) {
    if (!a.central()) throw Error("decone requires a central arrangement");
    if (i < 1 || i > a.n()) throw Error("decone index " + std::to_string(i) + " out of range");
    const Field& f = a.field;
    const Hyperplane& axis = a.planes[i - 1];
    std::size_t j0 = 0;
    while (f.is_zero(axis.normal[j0])) ++j0;  // canonical form: coefficient there is 1

    std::vector<Hyperplane> planes;
    for (std::size_t k = 0; k < a.n(); ++k) {
        if (k == i - 1) continue;
        const Hyperplane& h = a.planes[k];
        Hyperplane d;
        d.label = h.label;
        d.c0 = h.normal[j0];
        for (std::size_t j = 0; j < a.dim; ++j) {
            if (j == j0) continue;
            d.normal.push_back(f.sub(h.normal[j], f.mul(h.normal[j0], axis.normal[j])));
        }
        planes.push_back(std::move(d));
    }
    return make_arrangement(f, a.dim - 1, std::move(planes));
}

// ---- subset queries -------------------------------------------------------

namespace detail {

// rank of the homogeneous parts, and of the augmented system { alpha = 0 }
struct SubsetRanks {
    std::size_t homo = 0;
    std::size_t aug = 0;
};

inline SubsetRanks subset_ranks(const Arrangement& a, SubsetMask s) {
    std::vector<int> idx = mask_indices(s);
    Matrix m(a.field, idx.size(), a.dim + 1);
    for (std::size_t r = 0; r < idx.size(); ++r) {
        const Hyperplane& h = a.planes[idx[r] - 1];
        for (std::size_t j = 0; j < a.dim; ++j) m.at(r, j) = h.normal[j];
        m.at(r, a.dim) = h.c0;
    }
    SubsetRanks out;
    out.aug = rank(m);
    Matrix homo(a.field, idx.size(), a.dim);
    for (std::size_t r = 0; r < idx.size(); ++r)
        for (std::size_t j = 0; j < a.dim; ++j) homo.at(r, j) = m.at(r, j);
    out.homo = rank(homo);
    return out;
}

}  // namespace detail

inline bool does_intersect(const Arrangement& a, SubsetMask s) {
    if (s == 0) return true;
    auto r = detail::subset_ranks(a, s);
    return r.homo == r.aug;
}

inline bool is_dependent(const Arrangement& a, SubsetMask s) {
    if (s == 0) return false;
    auto r = detail::subset_ranks(a, s);
    return r.homo == r.aug && r.homo < static_cast<std::size_t>(mask_indices(s).size());
}

// codimension of the intersection of an intersecting subset
inline std::size_t flat_codim(const Arrangement& a, SubsetMask s) {
    if (s == 0) return 0;
    auto r = detail::subset_ranks(a, s);
    if (r.homo != r.aug) throw Error("codim of a non-intersecting subset");
    return r.homo;
}

// all hyperplanes containing the intersection of s (s must intersect)
inline SubsetMask closure(const Arrangement& a, SubsetMask s) {
    if (s == 0) return 0;
    auto base = detail::subset_ranks(a, s);
    if (base.homo != base.aug) throw Error("closure of a non-intersecting subset");
    SubsetMask out = s;
    for (std::size_t k = 0; k < a.n(); ++k) {
        SubsetMask bit = SubsetMask(1) << k;
        if (out & bit) continue;
        auto ext = detail::subset_ranks(a, s | bit);
        if (ext.aug == base.aug) out |= bit;
    }
    return out;
}

inline Arrangement localization(const Arrangement& a, SubsetMask flat) {
    if (flat == 0) throw Error("localization at the empty set");
    if (!does_intersect(a, flat)) throw Error("localization at a non-intersecting subset");
    if (closure(a, flat) != flat) throw Error("localization set is not closed");
    std::vector<Hyperplane> planes;
    for (int i : mask_indices(flat)) planes.push_back(a.planes[i - 1]);
    return make_arrangement(a.field, a.dim, std::move(planes));
}

}  // namespace arrcover
