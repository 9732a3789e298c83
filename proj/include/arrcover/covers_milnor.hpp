#pragma once

#include "os_aomoto.hpp"
#include "poset.hpp"

#include <optional>
#include <string>
#include <vector>

namespace arrcover {

// ---- double covers ----------------------------------------------------------

struct DoubleCoverRow {
    std::size_t k = 0;
    long long b = 0;     // Betti number of the complement
    long long h = 0;     // mod-2 Aomoto cohomology rank
    long long bbar = 0;  // mod-2 Betti number of the double cover, b + h
};

struct DoubleCoverReport {
    SubsetMask w = 0;
    std::vector<DoubleCoverRow> rows;

    long long bbar(std::size_t k) const { return rows.at(k).bbar; }
};

inline DoubleCoverReport double_cover_mod2_betti(const OSAlgebra& os_f2, SubsetMask w) {
    if (os_f2.coeff().characteristic() != 2)
        throw Error("double cover computation needs F2 coefficients");
    if (w == 0)
        throw Error("weight class is zero: a connected double cover needs a nonzero class");
    AomotoComplex cx = aomoto(os_f2, weights_from_subset(os_f2.coeff(), os_f2.arrangement().n(), w));
    DoubleCoverReport rep;
    rep.w = w;
    for (std::size_t k = 0; k < cx.dims.size(); ++k)
        rep.rows.push_back({k, cx.dims[k], cx.h[k], cx.dims[k] + cx.h[k]});
    return rep;
}

inline DoubleCoverReport double_cover_mod2_betti(const Arrangement& a, SubsetMask w) {
    return double_cover_mod2_betti(OSAlgebra(a, Field(FieldContext::prime(2))), w);
}

// ---- admissible weights ------------------------------------------------------

struct FlatViolation {
    SubsetMask flat = 0;  // 0 encodes a violation of the zero-sum condition
    BigRat sum;
};

struct AdmissibleWeights {
    int d = 0;            // eigenvalue index, 1..N-1
    std::size_t N = 0;    // hyperplane count of the central arrangement
    std::vector<BigRat> a;
    bool admissible = false;
    bool naive = false;   // the distinguished assignment a_i = d/N, a_N = d/N - d
    std::vector<FlatViolation> violations;
    std::vector<std::pair<SubsetMask, BigRat>> flat_sums;  // every checked dense flat
};

namespace detail {

inline bool is_positive_integer(const BigRat& r) {
    return denominator(r) == 1 && numerator(r) > 0;
}

inline bool is_integer(const BigRat& r) { return denominator(r) == 1; }

}  // namespace detail

// Re-check of the admissibility conditions, independent of the search:
// (P1) a_i = d/N mod 1, (P2) sum = 0, (P3) no dense rank-2 flat sum and no
// single entry in the positive integers.
inline std::vector<FlatViolation> admissibility_violations(const Rank2Census& census,
                                                           std::size_t N, int d,
                                                           const std::vector<BigRat>& a,
                                                           std::vector<std::pair<SubsetMask, BigRat>>* sums_out = nullptr) {
    std::vector<FlatViolation> bad;
    if (a.size() != N) throw Error("weight vector length mismatch");
    BigRat base(d, static_cast<long long>(N));
    BigRat total(0);
    for (std::size_t i = 0; i < N; ++i) {
        total += a[i];
        if (!detail::is_integer(a[i] - base))
            bad.push_back({SubsetMask(1) << i, a[i]});
        else if (detail::is_positive_integer(a[i]))
            bad.push_back({SubsetMask(1) << i, a[i]});
    }
    if (total != 0) bad.push_back({0, total});
    for (SubsetMask flat : census.flats) {
        std::vector<int> idx = mask_indices(flat);
        if (idx.size() < 3) continue;
        BigRat s(0);
        for (int i : idx) s += a[i - 1];
        if (sums_out) sums_out->emplace_back(flat, s);
        if (detail::is_positive_integer(s)) bad.push_back({flat, s});
    }
    return bad;
}

// Bounded deterministic search for admissible weights for eigenvalue index d:
// a_i = d/N + k_i with integer shifts. The naive assignment (0,...,0,-d) is
// tried first; then a depth-first scan of shifts in [-range, range], positions
// in index order, per-position values 0, -1, 1, -2, 2, ... The first hit wins.
inline AdmissibleWeights find_admissible_weights(const Rank2Census& census, std::size_t N,
                                                 int d, int range = 3) {
    if (N < 1 || d < 1 || static_cast<std::size_t>(d) >= N)
        throw Error("eigenvalue index must lie in 1..N-1");

    BigRat base(d, static_cast<long long>(N));
    auto with_shifts = [&](const std::vector<long long>& k) {
        AdmissibleWeights w;
        w.d = d;
        w.N = N;
        w.a.reserve(N);
        for (std::size_t i = 0; i < N; ++i) w.a.push_back(base + k[i]);
        return w;
    };
    auto finish = [&](AdmissibleWeights w, bool naive) {
        w.naive = naive;
        w.violations = admissibility_violations(census, N, d, w.a, &w.flat_sums);
        w.admissible = w.violations.empty();
        return w;
    };

    // naive assignment first, even though its last shift lies outside the range
    std::vector<long long> shifts(N, 0);
    shifts[N - 1] = -d;
    AdmissibleWeights naive = finish(with_shifts(shifts), true);
    if (naive.admissible) return naive;

    // dense flats whose sums can land in the integers for this d: those give
    // linear bounds sum of shifts <= bound; all others cannot be violated
    struct Constraint {
        std::vector<int> members;  // 0-based positions
        long long bound;
        int max_member;
    };
    std::vector<Constraint> constraints;
    for (SubsetMask flat : census.flats) {
        std::vector<int> idx = mask_indices(flat);
        if (idx.size() < 3) continue;
        BigRat cpart = base * static_cast<long long>(idx.size());
        if (!detail::is_integer(cpart)) continue;
        Constraint c;
        for (int i : idx) c.members.push_back(i - 1);
        c.bound = -cpart.convert_to<long long>();
        c.max_member = c.members.back();
        constraints.push_back(std::move(c));
    }
    std::vector<std::vector<std::size_t>> by_position(N);
    for (std::size_t ci = 0; ci < constraints.size(); ++ci)
        for (int m : constraints[ci].members) by_position[m].push_back(ci);

    std::vector<long long> k(N, 0);
    std::vector<long long> partial(constraints.size(), 0);
    std::vector<int> unassigned(constraints.size(), 0);
    for (std::size_t ci = 0; ci < constraints.size(); ++ci)
        unassigned[ci] = static_cast<int>(constraints[ci].members.size());

    std::vector<long long> values;
    values.push_back(0);
    for (int v = 1; v <= range; ++v) {
        values.push_back(-v);
        values.push_back(v);
    }

    long long target = -d;
    std::optional<std::vector<long long>> found;

    auto dfs = [&](auto&& self, std::size_t pos, long long sum) -> bool {
        if (pos == N) {
            if (sum != target) return false;
            found = k;
            return true;
        }
        std::size_t rest = N - pos - 1;
        for (long long v : values) {
            long long s = sum + v;
            long long need = target - s;
            if (need < -range * static_cast<long long>(rest) ||
                need > range * static_cast<long long>(rest))
                continue;
            k[pos] = v;
            bool ok = true;
            for (std::size_t ci : by_position[pos]) {
                partial[ci] += v;
                --unassigned[ci];
                // even all-minimal remaining entries cannot reach the bound
                if (partial[ci] - range * static_cast<long long>(unassigned[ci]) >
                    constraints[ci].bound)
                    ok = false;
            }
            if (ok && self(self, pos + 1, s)) return true;
            for (std::size_t ci : by_position[pos]) {
                partial[ci] -= v;
                ++unassigned[ci];
            }
        }
        return false;
    };
    dfs(dfs, 0, 0);

    if (found) {
        AdmissibleWeights w = finish(with_shifts(*found), false);
        if (!w.admissible)
            throw Error("admissible weight search returned a vector failing the re-check");
        return w;
    }
    return naive;  // admissible = false; naive violations double as diagnostics
}

inline AdmissibleWeights find_admissible_weights(const Arrangement& cA, int d, int range = 3) {
    if (!cA.central()) throw Error("admissible weights need a central arrangement");
    return find_admissible_weights(rank2_census(cA), cA.n(), d, range);
}

// ---- Milnor fiber eigenspaces ------------------------------------------------

// h^1 of the rational Aomoto complex of the decone, with weights restricted to
// the non-deconed hyperplanes. dec_os must be the decone's OS algebra over Q;
// deconed_index is 1-based into the central arrangement.
inline long long eigenspace_rank(const OSAlgebra& dec_os, const AdmissibleWeights& aw,
                                 std::size_t deconed_index) {
    if (!aw.admissible) throw Error("eigenspace rank needs admissible weights");
    if (dec_os.coeff().kind() != FieldKind::Rationals)
        throw Error("eigenspace rank needs rational coefficients");
    const Field& f = dec_os.coeff();
    AomotoWeights eta{f, {}};
    for (std::size_t i = 0; i < aw.N; ++i) {
        if (i + 1 == deconed_index) continue;
        eta.entries.push_back(f.from_rational(aw.a[i]));
    }
    if (eta.entries.size() != dec_os.arrangement().n())
        throw Error("weight count does not match the decone");
    return aomoto(dec_os, eta).h[1];
}

inline long long eigenspace_rank(const Arrangement& cA, const AdmissibleWeights& aw,
                                 std::size_t deconed_index = 0) {
    if (deconed_index == 0) deconed_index = cA.n();
    OSAlgebra dec_os(decone(cA, deconed_index), Field(FieldContext::rationals()));
    return eigenspace_rank(dec_os, aw, deconed_index);
}

struct EigenRow {
    int d = 0;
    AdmissibleWeights weights;
    long long h1 = -1;  // -1 = unknown (no admissible weights found)
};

struct MilnorReport {
    std::size_t N = 0;             // hyperplanes in the central arrangement
    std::size_t deconed_index = 0;
    std::vector<long long> decone_betti;
    std::vector<EigenRow> rows;    // d = 1..N-1
    bool complete = false;         // every eigenvalue has admissible weights
    long long b1_lower = 0;        // (N-1) + sum of known eigenspace ranks
    long long b1 = -1;             // exact value when complete
};

inline MilnorReport milnor_fiber_b1(const Arrangement& cA, std::size_t deconed_index = 0,
                                    int range = 3) {
    if (!cA.central()) throw Error("Milnor fiber analysis needs a central arrangement");
    std::size_t N = cA.n();
    if (N < 2) throw Error("Milnor fiber analysis needs at least 2 hyperplanes");
    if (deconed_index == 0) deconed_index = N;

    MilnorReport rep;
    rep.N = N;
    rep.deconed_index = deconed_index;

    Rank2Census census = rank2_census(cA);
    Arrangement dec = decone(cA, deconed_index);
    rep.decone_betti = betti_numbers(dec);
    OSAlgebra dec_os(std::move(dec), Field(FieldContext::rationals()));

    rep.complete = true;
    long long known = 0;
    for (int d = 1; d < static_cast<int>(N); ++d) {
        EigenRow row;
        row.d = d;
        row.weights = find_admissible_weights(census, N, d, range);
        if (row.weights.admissible)
            row.h1 = eigenspace_rank(dec_os, row.weights, deconed_index);
        else
            rep.complete = false;
        if (row.h1 >= 0) known += row.h1;
        rep.rows.push_back(std::move(row));
    }
    rep.b1_lower = static_cast<long long>(N - 1) + known;
    if (rep.complete) rep.b1 = rep.b1_lower;
    return rep;
}

// ---- 2-torsion certificate ----------------------------------------------------

struct TorsionCertificate {
    std::size_t N = 0;
    bool power_of_two = false;
    long long cover_h1 = -1;       // F2 Aomoto h^1 of the decone, w = all ones
    MilnorReport milnor;
    bool certified = false;
    std::vector<std::string> failures;
    // evidence chain: bbar_1(F) >= b1M + cover_h1 > b1F = b1M when certified
    long long b1M = 0;
    long long bbar1_lower = 0;
    long long b1F = -1;
};

inline TorsionCertificate two_torsion_certificate(const Arrangement& cA, int range = 3) {
    if (!cA.central()) throw Error("torsion certificate needs a central arrangement");
    TorsionCertificate cert;
    cert.N = cA.n();
    cert.power_of_two = cert.N >= 2 && (cert.N & (cert.N - 1)) == 0;
    if (!cert.power_of_two)
        cert.failures.push_back("hyperplane count " + std::to_string(cert.N) +
                                " is not a power of 2");

    Arrangement dec = decone(cA, cA.n());
    SubsetMask all_ones = (SubsetMask(1) << dec.n()) - 1;
    OSAlgebra dec_f2(dec, Field(FieldContext::prime(2)));
    DoubleCoverReport cover = double_cover_mod2_betti(dec_f2, all_ones);
    cert.cover_h1 = cover.rows.at(1).h;
    if (cert.cover_h1 <= 0)
        cert.failures.push_back("mod-2 cover cohomology vanishes in degree 1");

    cert.milnor = milnor_fiber_b1(cA, cA.n(), range);
    for (const EigenRow& row : cert.milnor.rows) {
        if (!row.weights.admissible)
            cert.failures.push_back("eigenvalue d=" + std::to_string(row.d) +
                                    ": no admissible weights found");
        else if (row.h1 != 0)
            cert.failures.push_back("eigenvalue d=" + std::to_string(row.d) +
                                    ": eigenspace rank " + std::to_string(row.h1) +
                                    " is nonzero");
    }

    cert.b1M = static_cast<long long>(cert.N) - 1;
    cert.bbar1_lower = cert.b1M + (cert.cover_h1 > 0 ? cert.cover_h1 : 0);
    cert.b1F = cert.milnor.b1;
    cert.certified = cert.failures.empty();
    return cert;
}

}  // namespace arrcover
