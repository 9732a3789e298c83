#pragma once

#include "field.hpp"

#include <algorithm>
#include <cstddef>
#include <map>
#include <utility>
#include <vector>

namespace arrcover {

struct Matrix {
    Field field;
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<Scalar> data;  // row-major

    Matrix() = default;
    Matrix(Field f, std::size_t r, std::size_t c)
        : field(std::move(f)), rows(r), cols(c), data(r * c) {}

    Scalar& at(std::size_t r, std::size_t c) { return data[r * cols + c]; }
    const Scalar& at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }

    static Matrix identity(const Field& f, std::size_t n) {
        Matrix m(f, n, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = f.one();
        return m;
    }

    bool equal(const Matrix& o) const {
        if (rows != o.rows || cols != o.cols || !(field.context() == o.field.context())) return false;
        for (std::size_t i = 0; i < data.size(); ++i)
            if (!field.equal(data[i], o.data[i])) return false;
        return true;
    }
};

inline Matrix transpose(const Matrix& m) {
    Matrix t(m.field, m.cols, m.rows);
    for (std::size_t r = 0; r < m.rows; ++r)
        for (std::size_t c = 0; c < m.cols; ++c)
            t.at(c, r) = m.at(r, c);
    return t;
}

inline Matrix multiply(const Matrix& x, const Matrix& y) {
    if (x.cols != y.rows) throw Error("matrix product shape mismatch");
    const Field& f = x.field;
    Matrix out(f, x.rows, y.cols);
    for (std::size_t i = 0; i < x.rows; ++i)
        for (std::size_t k = 0; k < x.cols; ++k) {
            if (f.is_zero(x.at(i, k))) continue;
            for (std::size_t j = 0; j < y.cols; ++j)
                out.at(i, j) = f.add(out.at(i, j), f.mul(x.at(i, k), y.at(k, j)));
        }
    return out;
}

struct RrefResult {
    Matrix m;
    std::vector<std::size_t> pivots;
};

namespace detail {

inline RrefResult rref_generic(const Matrix& input) {
    RrefResult res{input, {}};
    Matrix& m = res.m;
    const Field& f = m.field;
    std::size_t lead = 0;
    for (std::size_t col = 0; col < m.cols && lead < m.rows; ++col) {
        std::size_t sel = lead;
        while (sel < m.rows && f.is_zero(m.at(sel, col))) ++sel;
        if (sel == m.rows) continue;
        for (std::size_t c = 0; c < m.cols; ++c) std::swap(m.at(sel, c), m.at(lead, c));
        Scalar piv = f.inv(m.at(lead, col));
        for (std::size_t c = col; c < m.cols; ++c) m.at(lead, c) = f.mul(m.at(lead, c), piv);
        for (std::size_t r = 0; r < m.rows; ++r) {
            if (r == lead || f.is_zero(m.at(r, col))) continue;
            Scalar factor = m.at(r, col);
            for (std::size_t c = col; c < m.cols; ++c)
                m.at(r, c) = f.sub(m.at(r, c), f.mul(factor, m.at(lead, c)));
        }
        res.pivots.push_back(col);
        ++lead;
    }
    return res;
}

// bit-packed elimination for F2
struct PackedF2 {
    std::size_t rows = 0, cols = 0, words = 0;
    std::vector<std::uint64_t> bits;

    std::uint64_t* row(std::size_t r) { return bits.data() + r * words; }
    const std::uint64_t* row(std::size_t r) const { return bits.data() + r * words; }
    bool get(std::size_t r, std::size_t c) const { return (row(r)[c >> 6] >> (c & 63)) & 1; }
    void set(std::size_t r, std::size_t c) { row(r)[c >> 6] |= std::uint64_t(1) << (c & 63); }

    static PackedF2 from_matrix(const Matrix& m) {
        PackedF2 p;
        p.rows = m.rows;
        p.cols = m.cols;
        p.words = (m.cols + 63) / 64;
        p.bits.assign(p.rows * p.words, 0);
        for (std::size_t r = 0; r < m.rows; ++r)
            for (std::size_t c = 0; c < m.cols; ++c)
                if (m.at(r, c).res & 1) p.set(r, c);
        return p;
    }

    Matrix to_matrix(const Field& f) const {
        Matrix m(f, rows, cols);
        for (std::size_t r = 0; r < rows; ++r)
            for (std::size_t c = 0; c < cols; ++c)
                if (get(r, c)) m.at(r, c) = f.one();
        return m;
    }

    std::vector<std::size_t> rref() {
        std::vector<std::size_t> pivots;
        std::size_t lead = 0;
        for (std::size_t col = 0; col < cols && lead < rows; ++col) {
            std::size_t sel = lead;
            while (sel < rows && !get(sel, col)) ++sel;
            if (sel == rows) continue;
            if (sel != lead)
                for (std::size_t w = 0; w < words; ++w) std::swap(row(sel)[w], row(lead)[w]);
            for (std::size_t r = 0; r < rows; ++r) {
                if (r != lead && get(r, col))
                    for (std::size_t w = 0; w < words; ++w) row(r)[w] ^= row(lead)[w];
            }
            pivots.push_back(col);
            ++lead;
        }
        return pivots;
    }
};

inline RrefResult rref_f2(const Matrix& input) {
    PackedF2 p = PackedF2::from_matrix(input);
    std::vector<std::size_t> pivots = p.rref();
    return RrefResult{p.to_matrix(input.field), std::move(pivots)};
}

}  // namespace detail

inline RrefResult rref(const Matrix& m) {
    if (m.field.characteristic() == 2) return detail::rref_f2(m);
    return detail::rref_generic(m);
}

inline std::size_t rank(const Matrix& m) { return rref(m).pivots.size(); }

// Basis of the right null space; free variables set to 1 in index order.
inline std::vector<std::vector<Scalar>> kernel_basis(const Matrix& m) {
    RrefResult rr = rref(m);
    const Field& f = m.field;
    std::vector<bool> is_pivot(m.cols, false);
    for (std::size_t c : rr.pivots) is_pivot[c] = true;
    std::vector<std::vector<Scalar>> basis;
    for (std::size_t free = 0; free < m.cols; ++free) {
        if (is_pivot[free]) continue;
        std::vector<Scalar> v(m.cols, f.zero());
        v[free] = f.one();
        for (std::size_t i = 0; i < rr.pivots.size(); ++i)
            v[rr.pivots[i]] = f.neg(rr.m.at(i, free));
        basis.push_back(std::move(v));
    }
    return basis;
}

// Sparse entry list, sorted by column index.
using SparseRow = std::vector<std::pair<std::size_t, Scalar>>;

// Incremental reduced-row-echelon accumulator. Rows arrive one at a time,
// get reduced against the current pivots, and (when independent) are stored
// normalized and back-eliminated, so the stored set is always the unique RREF
// of everything inserted so far. Fill stays confined to non-pivot columns.
class RowReducer {
public:
    RowReducer(Field f, std::size_t cols) : field_(std::move(f)), cols_(cols) {}

    std::size_t cols() const { return cols_; }
    std::size_t rank() const { return rows_.size(); }

    std::vector<std::size_t> pivot_cols() const {
        std::vector<std::size_t> out;
        out.reserve(rows_.size());
        for (const auto& [c, _] : rows_) out.push_back(c);
        return out;
    }

    bool is_pivot(std::size_t col) const { return rows_.count(col) != 0; }

    // Residual of v after subtracting pivot-row multiples; its support lies
    // entirely on non-pivot columns.
    SparseRow reduce(SparseRow v) const {
        normalize_input(v);
        std::size_t pos = 0;
        while (pos < v.size()) {
            auto it = rows_.find(v[pos].first);
            if (it == rows_.end()) { ++pos; continue; }
            axpy(v, field_.neg(v[pos].second), it->second, pos);
        }
        return v;
    }

    bool add_row(SparseRow v) {
        v = reduce(std::move(v));
        if (v.empty()) return false;
        Scalar piv_inv = field_.inv(v[0].second);
        for (auto& [c, val] : v) val = field_.mul(val, piv_inv);
        std::size_t piv = v[0].first;
        for (auto& [c, row] : rows_) {
            (void)c;
            auto hit = std::lower_bound(row.begin(), row.end(), piv,
                                        [](const auto& e, std::size_t col) { return e.first < col; });
            if (hit != row.end() && hit->first == piv) {
                std::size_t at = static_cast<std::size_t>(hit - row.begin());
                axpy(row, field_.neg(hit->second), v, at);
            }
        }
        rows_.emplace(piv, std::move(v));
        return true;
    }

    const Field& field() const { return field_; }

private:
    Field field_;
    std::size_t cols_;
    std::map<std::size_t, SparseRow> rows_;  // pivot column -> row (pivot coeff 1)

    void normalize_input(SparseRow& v) const {
        std::sort(v.begin(), v.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
        SparseRow out;
        out.reserve(v.size());
        for (auto& e : v) {
            if (e.first >= cols_) throw Error("sparse row entry out of range");
            if (!out.empty() && out.back().first == e.first)
                out.back().second = field_.add(out.back().second, e.second);
            else
                out.push_back(std::move(e));
        }
        std::erase_if(out, [&](const auto& e) { return field_.is_zero(e.second); });
        v = std::move(out);
    }

    // v += coeff * w, assuming v[pos] cancels exactly (pos = index of the
    // matched column inside v); both lists stay sorted.
    void axpy(SparseRow& v, const Scalar& coeff, const SparseRow& w, std::size_t pos) const {
        SparseRow out;
        out.reserve(v.size() + w.size());
        out.insert(out.end(), v.begin(), v.begin() + pos);
        std::size_t i = pos, j = 0;
        while (i < v.size() || j < w.size()) {
            if (j == w.size() || (i < v.size() && v[i].first < w[j].first)) {
                out.push_back(v[i++]);
            } else if (i == v.size() || w[j].first < v[i].first) {
                Scalar val = field_.mul(coeff, w[j].second);
                if (!field_.is_zero(val)) out.emplace_back(w[j].first, std::move(val));
                ++j;
            } else {
                Scalar val = field_.add(v[i].second, field_.mul(coeff, w[j].second));
                if (!field_.is_zero(val)) out.emplace_back(v[i].first, std::move(val));
                ++i; ++j;
            }
        }
        v = std::move(out);
    }
};

}  // namespace arrcover
