#pragma once

#include "arrangement.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <map>
#include <optional>
#include <vector>

namespace arrcover {

// Degree-k component of the Orlik-Solomon algebra as an explicit quotient:
// generators e_S for intersecting k-subsets (lexicographic tuple order),
// modulo the degree-k piece of the ideal. The reduced relation rows double as
// a straightening table expressing every generator in the quotient basis.
struct OSDegree {
    std::size_t degree = 0;
    std::vector<SubsetMask> generators;
    std::map<SubsetMask, std::size_t> gen_index;
    std::vector<SubsetMask> basis;           // non-pivot generators
    std::size_t dimension = 0;
    std::vector<std::vector<Scalar>> coords; // generator -> coordinates in basis

    // coordinates of the class of e_S; zero vector when S does not intersect
    std::vector<Scalar> express(const Field& f, SubsetMask s) const {
        auto it = gen_index.find(s);
        if (it == gen_index.end()) return std::vector<Scalar>(dimension, f.zero());
        return coords[it->second];
    }
};

namespace detail {

inline void enumerate_subsets(std::size_t n, std::size_t k,
                              const std::function<void(SubsetMask)>& visit) {
    if (k > n) return;
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    while (true) {
        SubsetMask m = 0;
        for (std::size_t i : idx) m |= SubsetMask(1) << i;
        visit(m);
        std::size_t i = k;
        while (i > 0 && idx[i - 1] == n - k + (i - 1)) --i;
        if (i == 0) break;
        ++idx[i - 1];
        for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

// sign of e_U ^ e_W as a multiple of e_{U union W} (disjoint U, W):
// parity of the number of pairs (u, w) with u > w
inline int merge_sign(SubsetMask u, SubsetMask w) {
    int inversions = 0;
    for (int uu : mask_indices(u))
        for (int ww : mask_indices(w))
            if (uu > ww) ++inversions;
    return (inversions & 1) ? -1 : 1;
}

struct SubsetClassifier {
    const Arrangement& a;
    bool central;

    explicit SubsetClassifier(const Arrangement& arr) : a(arr), central(arr.central()) {}

    bool intersects(SubsetMask s) const {
        if (central || s == 0) return true;
        auto r = subset_ranks(a, s);
        return r.homo == r.aug;
    }

    bool dependent(SubsetMask s) const {
        auto r = subset_ranks(a, s);
        if (!central && r.homo != r.aug) return false;
        return r.homo < static_cast<std::size_t>(std::popcount(s));
    }
};

}  // namespace detail

inline OSDegree os_degree(const Arrangement& a, std::size_t k, const Field& coeff) {
    detail::SubsetClassifier cls(a);
    OSDegree deg;
    deg.degree = k;

    detail::enumerate_subsets(a.n(), k, [&](SubsetMask s) {
        if (cls.intersects(s)) {
            deg.gen_index[s] = deg.generators.size();
            deg.generators.push_back(s);
        }
    });

    RowReducer reducer(coeff, deg.generators.size());

    // dependent subsets T with |T| <= k+1, smallest size first
    for (std::size_t t = 3; t <= k + 1 && t <= a.n(); ++t) {
        std::vector<SubsetMask> dependents;
        detail::enumerate_subsets(a.n(), t, [&](SubsetMask s) {
            if (cls.dependent(s)) dependents.push_back(s);
        });
        std::size_t usize = k + 1 - t;
        for (SubsetMask T : dependents) {
            std::vector<int> tidx = mask_indices(T);
            // every padding set U disjoint from T, row = e_U ^ de_T
            std::vector<std::size_t> free_cols;
            for (std::size_t i = 0; i < a.n(); ++i)
                if (!(T & (SubsetMask(1) << i))) free_cols.push_back(i);
            if (usize > free_cols.size()) continue;
            detail::enumerate_subsets(free_cols.size(), usize, [&](SubsetMask upatt) {
                SubsetMask U = 0;
                for (int pos : mask_indices(upatt)) U |= SubsetMask(1) << free_cols[pos - 1];
                SparseRow row;
                int term_sign = 1;
                for (std::size_t p = 0; p < tidx.size(); ++p) {
                    SubsetMask body = T & ~(SubsetMask(1) << (tidx[p] - 1));
                    SubsetMask mono = U | body;
                    auto it = deg.gen_index.find(mono);
                    if (it != deg.gen_index.end()) {
                        int sgn = term_sign * detail::merge_sign(U, body);
                        row.emplace_back(it->second, coeff.from_int(sgn));
                    }
                    term_sign = -term_sign;
                }
                if (!row.empty()) reducer.add_row(std::move(row));
            });
        }
    }

    // dependent intersecting k-subsets die in the quotient outright
    // (e_S = e_s ^ de_S for the smallest s in S)
    if (k >= 3) {
        for (std::size_t col = 0; col < deg.generators.size(); ++col) {
            if (cls.dependent(deg.generators[col]))
                reducer.add_row({{col, coeff.one()}});
        }
    }

    deg.dimension = deg.generators.size() - reducer.rank();
    std::map<std::size_t, std::size_t> basis_pos;
    for (std::size_t col = 0; col < deg.generators.size(); ++col) {
        if (!reducer.is_pivot(col)) {
            basis_pos[col] = deg.basis.size();
            deg.basis.push_back(deg.generators[col]);
        }
    }
    deg.coords.reserve(deg.generators.size());
    for (std::size_t col = 0; col < deg.generators.size(); ++col) {
        SparseRow residual = reducer.reduce({{col, coeff.one()}});
        std::vector<Scalar> dense(deg.dimension, coeff.zero());
        for (auto& [c, v] : residual) dense[basis_pos.at(c)] = std::move(v);
        deg.coords.push_back(std::move(dense));
    }
    return deg;
}

// All degree components over one coefficient field, built once and reused
// across weight vectors.
class OSAlgebra {
public:
    OSAlgebra(Arrangement a, Field coeff)
        : arr_(std::move(a)), coeff_(std::move(coeff)) {
        std::size_t maxdeg = std::min(arr_.dim, arr_.n());
        degrees_.reserve(maxdeg + 1);
        for (std::size_t k = 0; k <= maxdeg; ++k)
            degrees_.push_back(os_degree(arr_, k, coeff_));
    }

    const Arrangement& arrangement() const { return arr_; }
    const Field& coeff() const { return coeff_; }
    std::size_t max_degree() const { return degrees_.size() - 1; }

    long long dimension(std::size_t k) const {
        return k < degrees_.size() ? static_cast<long long>(degrees_[k].dimension) : 0;
    }

    std::vector<long long> dimensions() const {
        std::vector<long long> out(arr_.dim + 1, 0);
        for (std::size_t k = 0; k <= arr_.dim; ++k) out[k] = dimension(k);
        return out;
    }

    const OSDegree& degree(std::size_t k) const {
        if (k >= degrees_.size()) throw Error("degree above the algebra's top");
        return degrees_[k];
    }

private:
    Arrangement arr_;
    Field coeff_;
    std::vector<OSDegree> degrees_;
};

struct AomotoWeights {
    Field field;
    std::vector<Scalar> entries;  // a_i per hyperplane, 1-based index i

    bool zero() const {
        for (const auto& e : entries)
            if (!field.is_zero(e)) return false;
        return true;
    }
};

inline AomotoWeights weights_from_subset(const Field& f, std::size_t n, SubsetMask s) {
    AomotoWeights w{f, std::vector<Scalar>(n, f.zero())};
    for (int i : mask_indices(s)) {
        if (static_cast<std::size_t>(i) > n) throw Error("weight subset index out of range");
        w.entries[i - 1] = f.one();
    }
    return w;
}

struct AomotoComplex {
    std::vector<long long> dims;       // dim A^k, k = 0..l
    std::vector<std::size_t> d_ranks;  // rank of D_k = (w ^ -): A^k -> A^{k+1}
    std::vector<long long> h;          // cohomology ranks h^0..h^l
    std::vector<Matrix> D;             // D[k] in quotient bases, k = 0..l-1
};

inline AomotoComplex aomoto(const OSAlgebra& os, const AomotoWeights& w) {
    const Arrangement& a = os.arrangement();
    const Field& f = os.coeff();
    if (!(w.field.context() == f.context())) throw Error("weight field differs from algebra field");
    if (w.entries.size() != a.n()) throw Error("weight vector length mismatch");

    AomotoComplex cx;
    cx.dims.assign(a.dim + 1, 0);
    for (std::size_t k = 0; k <= a.dim; ++k) cx.dims[k] = os.dimension(k);

    std::size_t maxdeg = os.max_degree();
    cx.D.reserve(a.dim);
    for (std::size_t k = 0; k + 1 <= a.dim; ++k) {
        std::size_t rows = k + 1 <= maxdeg ? os.degree(k + 1).dimension : 0;
        std::size_t cols = k <= maxdeg ? os.degree(k).dimension : 0;
        Matrix D(f, rows, cols);
        if (rows && cols) {
            const OSDegree& lo = os.degree(k);
            const OSDegree& hi = os.degree(k + 1);
            for (std::size_t c = 0; c < lo.basis.size(); ++c) {
                SubsetMask S = lo.basis[c];
                for (std::size_t i = 0; i < a.n(); ++i) {
                    SubsetMask bit = SubsetMask(1) << i;
                    if (S & bit) continue;
                    if (f.is_zero(w.entries[i])) continue;
                    auto it = hi.gen_index.find(S | bit);
                    if (it == hi.gen_index.end()) continue;
                    int below = std::popcount(S & (bit - 1));
                    Scalar coeff = (below & 1) ? f.neg(w.entries[i]) : w.entries[i];
                    const std::vector<Scalar>& target = hi.coords[it->second];
                    for (std::size_t r = 0; r < hi.dimension; ++r) {
                        if (f.is_zero(target[r])) continue;
                        D.at(r, c) = f.add(D.at(r, c), f.mul(coeff, target[r]));
                    }
                }
            }
        }
        cx.D.push_back(std::move(D));
    }

    cx.d_ranks.assign(a.dim + 1, 0);
    for (std::size_t k = 0; k + 1 <= a.dim; ++k) cx.d_ranks[k] = rank(cx.D[k]);

    cx.h.assign(a.dim + 1, 0);
    for (std::size_t k = 0; k <= a.dim; ++k) {
        long long kernel = cx.dims[k] - static_cast<long long>(cx.d_ranks[k]);
        long long image = k ? static_cast<long long>(cx.d_ranks[k - 1]) : 0;
        cx.h[k] = kernel - image;
    }
    return cx;
}

inline AomotoComplex aomoto(const Arrangement& a, const AomotoWeights& w) {
    return aomoto(OSAlgebra(a, w.field), w);
}

// Exhaustive cocycle scan over F2: all subsets S with w ^ e_S = 0 in A^2,
// where e_S = sum of e_i over S. Gray-code walk, one packed XOR per step.
inline std::vector<SubsetMask> enumerate_cocycles_f2(const OSAlgebra& os, SubsetMask wmask) {
    const Arrangement& a = os.arrangement();
    const Field& f = os.coeff();
    if (f.characteristic() != 2) throw Error("cocycle enumeration needs F2 coefficients");
    if (wmask == 0) throw Error("cocycle enumeration needs a nonzero weight class");
    if (a.n() > 24) throw Error("cocycle enumeration is limited to 24 hyperplanes");
    if (a.dim < 2) throw Error("cocycle enumeration needs a 2-dimensional target degree");

    AomotoWeights w = weights_from_subset(f, a.n(), wmask);
    const OSDegree& deg2 = os.degree(2);
    std::size_t words = (deg2.dimension + 63) / 64 + (deg2.dimension == 0 ? 1 : 0);

    // packed coordinates of w ^ e_j per hyperplane j
    std::vector<std::vector<std::uint64_t>> cols(a.n(), std::vector<std::uint64_t>(words, 0));
    for (std::size_t j = 0; j < a.n(); ++j) {
        for (std::size_t i = 0; i < a.n(); ++i) {
            if (i == j || !(wmask & (SubsetMask(1) << i))) continue;
            SubsetMask pair = (SubsetMask(1) << i) | (SubsetMask(1) << j);
            auto it = deg2.gen_index.find(pair);
            if (it == deg2.gen_index.end()) continue;
            const auto& coord = deg2.coords[it->second];
            for (std::size_t r = 0; r < deg2.dimension; ++r)
                if (coord[r].res & 1) cols[j][r >> 6] ^= std::uint64_t(1) << (r & 63);
        }
    }

    std::vector<SubsetMask> out;
    std::vector<std::uint64_t> value(words, 0);
    SubsetMask mask = 0;
    std::uint64_t total = std::uint64_t(1) << a.n();
    for (std::uint64_t i = 0;; ++i) {
        bool zero = true;
        for (std::uint64_t v : value)
            if (v) { zero = false; break; }
        if (zero) out.push_back(mask);
        if (i + 1 == total) break;
        unsigned bit = std::countr_zero(i + 1);
        mask ^= SubsetMask(1) << bit;
        for (std::size_t wd = 0; wd < words; ++wd) value[wd] ^= cols[bit][wd];
    }
    std::sort(out.begin(), out.end());
    return out;
}

// Closed-form test for eta ^ omega = 0 in A^2 of a pencil of n >= 3 concurrent
// lines: true iff both coefficient sums vanish or the two vectors are
// proportional.
inline bool pencil_kernel_oracle(std::size_t n, const AomotoWeights& eta,
                                 const AomotoWeights& omega, const Field& f) {
    if (n < 3) throw Error("pencil criterion needs at least 3 lines");
    if (eta.entries.size() != n || omega.entries.size() != n)
        throw Error("pencil criterion weight length mismatch");
    Scalar se = f.zero(), so = f.zero();
    for (std::size_t i = 0; i < n; ++i) {
        se = f.add(se, eta.entries[i]);
        so = f.add(so, omega.entries[i]);
    }
    if (f.is_zero(se) && f.is_zero(so)) return true;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            Scalar minor = f.sub(f.mul(eta.entries[i], omega.entries[j]),
                                 f.mul(eta.entries[j], omega.entries[i]));
            if (!f.is_zero(minor)) return false;
        }
    return true;
}

// coordinates of eta ^ omega in the degree-2 quotient basis
inline std::vector<Scalar> wedge_pair_coords(const OSAlgebra& os, const AomotoWeights& eta,
                                             const AomotoWeights& omega) {
    const Arrangement& a = os.arrangement();
    const Field& f = os.coeff();
    const OSDegree& deg2 = os.degree(2);
    std::vector<Scalar> out(deg2.dimension, f.zero());
    for (std::size_t i = 0; i < a.n(); ++i)
        for (std::size_t j = i + 1; j < a.n(); ++j) {
            Scalar coeff = f.sub(f.mul(eta.entries[i], omega.entries[j]),
                                 f.mul(eta.entries[j], omega.entries[i]));
            if (f.is_zero(coeff)) continue;
            SubsetMask pair = (SubsetMask(1) << i) | (SubsetMask(1) << j);
            auto it = deg2.gen_index.find(pair);
            if (it == deg2.gen_index.end()) continue;
            const auto& coord = deg2.coords[it->second];
            for (std::size_t r = 0; r < deg2.dimension; ++r)
                out[r] = f.add(out[r], f.mul(coeff, coord[r]));
        }
    return out;
}

}  // namespace arrcover
