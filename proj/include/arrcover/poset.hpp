#pragma once

#include "arrangement.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <vector>

namespace arrcover {

struct Flat {
    SubsetMask members = 0;  // closure-complete
    std::size_t codim = 0;
    long long mobius = 0;
};

struct Rank2Census {
    // multiplicity -> number of rank-2 flats with that many hyperplanes
    std::map<std::size_t, std::size_t> table;
    std::vector<SubsetMask> flats;  // all rank-2 flats, deterministic order
};

struct IntersectionPoset {
    std::size_t dim = 0;
    std::vector<Flat> flats;  // sorted by (codim, lexicographic member tuple)

    const Flat& bottom() const { return flats.front(); }

    std::vector<const Flat*> at_codim(std::size_t c) const {
        std::vector<const Flat*> out;
        for (const auto& f : flats)
            if (f.codim == c) out.push_back(&f);
        return out;
    }

    std::size_t max_codim() const {
        std::size_t m = 0;
        for (const auto& f : flats) m = std::max(m, f.codim);
        return m;
    }
};

namespace detail {

inline bool member_lex_less(SubsetMask x, SubsetMask y) {
    return mask_indices(x) < mask_indices(y);
}

}  // namespace detail

inline IntersectionPoset build_poset(const Arrangement& a) {
    // breadth-first closure: grow flats one hyperplane at a time
    std::set<SubsetMask> seen;
    std::vector<std::pair<SubsetMask, std::size_t>> found;  // (members, codim)
    seen.insert(0);
    found.emplace_back(0, 0);
    std::vector<SubsetMask> frontier{0};
    while (!frontier.empty()) {
        std::vector<SubsetMask> next;
        for (SubsetMask f : frontier) {
            for (std::size_t k = 0; k < a.n(); ++k) {
                SubsetMask bit = SubsetMask(1) << k;
                if (f & bit) continue;
                if (!does_intersect(a, f | bit)) continue;
                SubsetMask cl = closure(a, f | bit);
                if (seen.insert(cl).second) {
                    found.emplace_back(cl, flat_codim(a, cl));
                    next.push_back(cl);
                }
            }
        }
        frontier = std::move(next);
    }

    IntersectionPoset poset;
    poset.dim = a.dim;
    for (auto& [members, codim] : found) {
        Flat f;
        f.members = members;
        f.codim = codim;
        poset.flats.push_back(f);
    }
    std::sort(poset.flats.begin(), poset.flats.end(), [](const Flat& x, const Flat& y) {
        if (x.codim != y.codim) return x.codim < y.codim;
        return detail::member_lex_less(x.members, y.members);
    });

    // mobius recursion down the containment order (X < Y iff members strictly contained)
    for (std::size_t i = 0; i < poset.flats.size(); ++i) {
        Flat& y = poset.flats[i];
        if (i == 0) { y.mobius = 1; continue; }
        long long acc = 0;
        for (std::size_t j = 0; j < i; ++j) {
            const Flat& x = poset.flats[j];
            if (x.members != y.members && (x.members & y.members) == x.members)
                acc += x.mobius;
        }
        y.mobius = -acc;
    }
    return poset;
}

inline std::vector<long long> betti_numbers(const IntersectionPoset& poset) {
    std::vector<long long> b(poset.dim + 1, 0);
    long long sign = 1;
    for (std::size_t k = 0; k <= poset.dim; ++k) {
        long long acc = 0;
        for (const auto& f : poset.flats)
            if (f.codim == k) acc += f.mobius;
        b[k] = sign * acc;
        sign = -sign;
    }
    return b;
}

inline std::vector<long long> betti_numbers(const Arrangement& a) {
    return betti_numbers(build_poset(a));
}

// chi(t) = sum_X mu(X) t^{dim X}; coefficients indexed by degree 0..dim
inline std::vector<long long> characteristic_polynomial(const IntersectionPoset& poset) {
    std::vector<long long> coeff(poset.dim + 1, 0);
    for (const auto& f : poset.flats) coeff[poset.dim - f.codim] += f.mobius;
    return coeff;
}

inline std::vector<long long> characteristic_polynomial(const Arrangement& a) {
    return characteristic_polynomial(build_poset(a));
}

inline Rank2Census rank2_census(const IntersectionPoset& poset) {
    Rank2Census census;
    for (const auto& f : poset.flats) {
        if (f.codim != 2) continue;
        census.flats.push_back(f.members);
        census.table[mask_indices(f.members).size()] += 1;
    }
    return census;
}

inline Rank2Census rank2_census(const Arrangement& a) {
    return rank2_census(build_poset(a));
}

// ---- poset isomorphism ----------------------------------------------------
// An isomorphism of intersection posets is induced by a bijection of the
// hyperplanes carrying flats to flats. Searched by backtracking over atom
// images, pruned by per-atom rank-2 multiplicity profiles and pairwise flat
// sizes, then verified against the full flat sets.

namespace detail {

struct PosetShape {
    std::size_t n = 0;
    std::set<SubsetMask> flats;
    std::vector<std::vector<std::size_t>> pair_mult;  // size of the rank-2 flat through i,j; 0 if none
    std::vector<std::multiset<std::size_t>> profile;  // per atom: multiset of rank-2 flat sizes

    static PosetShape of(const Arrangement& a, const IntersectionPoset& poset) {
        PosetShape s;
        s.n = a.n();
        for (const auto& f : poset.flats) s.flats.insert(f.members);
        s.pair_mult.assign(s.n, std::vector<std::size_t>(s.n, 0));
        s.profile.assign(s.n, {});
        for (const auto& f : poset.flats) {
            if (f.codim != 2) continue;
            std::vector<int> idx = mask_indices(f.members);
            for (int i : idx) s.profile[i - 1].insert(idx.size());
            for (std::size_t x = 0; x < idx.size(); ++x)
                for (std::size_t y = x + 1; y < idx.size(); ++y) {
                    s.pair_mult[idx[x] - 1][idx[y] - 1] = idx.size();
                    s.pair_mult[idx[y] - 1][idx[x] - 1] = idx.size();
                }
        }
        return s;
    }
};

inline bool iso_search(const PosetShape& A, const PosetShape& B, std::vector<int>& image,
                       std::vector<bool>& used, std::size_t next) {
    if (next == A.n) {
        // full verification: flats must map onto flats
        std::set<SubsetMask> mapped;
        for (SubsetMask f : A.flats) {
            SubsetMask g = 0;
            for (std::size_t i = 0; i < A.n; ++i)
                if (f & (SubsetMask(1) << i)) g |= SubsetMask(1) << image[i];
            mapped.insert(g);
        }
        return mapped == B.flats;
    }
    for (std::size_t cand = 0; cand < B.n; ++cand) {
        if (used[cand]) continue;
        if (A.profile[next] != B.profile[cand]) continue;
        bool ok = true;
        for (std::size_t prev = 0; prev < next && ok; ++prev)
            ok = A.pair_mult[next][prev] == B.pair_mult[cand][image[prev]];
        if (!ok) continue;
        image[next] = static_cast<int>(cand);
        used[cand] = true;
        if (iso_search(A, B, image, used, next + 1)) return true;
        used[cand] = false;
    }
    return false;
}

}  // namespace detail

// Returns a hyperplane bijection (0-based images) inducing a poset isomorphism,
// or an empty vector if none exists.
inline std::vector<int> find_poset_isomorphism(const Arrangement& a, const Arrangement& b) {
    if (a.n() != b.n()) return {};
    IntersectionPoset pa = build_poset(a), pb = build_poset(b);
    if (pa.flats.size() != pb.flats.size()) return {};
    auto A = detail::PosetShape::of(a, pa);
    auto B = detail::PosetShape::of(b, pb);
    std::vector<int> image(a.n(), -1);
    std::vector<bool> used(a.n(), false);
    if (detail::iso_search(A, B, image, used, 0)) return image;
    return {};
}

inline bool poset_isomorphic(const Arrangement& a, const Arrangement& b) {
    return a.n() == b.n() && !find_poset_isomorphism(a, b).empty();
}

}  // namespace arrcover
