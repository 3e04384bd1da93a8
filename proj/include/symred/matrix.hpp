#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "symred/poly.hpp"

namespace symred {

/// Dense rectangular matrix of polynomials over one ring. Matrices here stay
/// small (at most dim X + dim g on a side), so dense storage and expansion
/// determinants are the right tools.
class PolyMatrix {
public:
    PolyMatrix() = default;

    PolyMatrix(RingPtr ring, std::size_t rows, std::size_t cols)
        : ring_(std::move(ring)), rows_(rows), cols_(cols),
          entries_(rows * cols, MultiPoly::zero(ring_)) {}

    static PolyMatrix identity(const RingPtr& ring, std::size_t n) {
        PolyMatrix m(ring, n, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = MultiPoly::constant(ring, Rational(1));
        return m;
    }

    static PolyMatrix zero(const RingPtr& ring, std::size_t rows, std::size_t cols) {
        return PolyMatrix(ring, rows, cols);
    }

    static PolyMatrix from_rows(const RingPtr& ring,
                                const std::vector<std::vector<MultiPoly>>& rows) {
        std::size_t r = rows.size();
        std::size_t c = r == 0 ? 0 : rows[0].size();
        PolyMatrix m(ring, r, c);
        for (std::size_t i = 0; i < r; ++i) {
            if (rows[i].size() != c) throw ShapeError("from_rows: ragged rows");
            for (std::size_t j = 0; j < c; ++j) {
                require_same_ring(ring, rows[i][j].ring(), "matrix entry");
                m.at(i, j) = rows[i][j];
            }
        }
        return m;
    }

    const RingPtr& ring() const { return ring_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    MultiPoly& at(std::size_t i, std::size_t j) {
        if (i >= rows_ || j >= cols_) throw ShapeError("matrix index out of range");
        return entries_[i * cols_ + j];
    }
    const MultiPoly& at(std::size_t i, std::size_t j) const {
        if (i >= rows_ || j >= cols_) throw ShapeError("matrix index out of range");
        return entries_[i * cols_ + j];
    }

    bool is_zero() const {
        for (const auto& e : entries_)
            if (!e.is_zero()) return false;
        return true;
    }

    PolyMatrix transpose() const {
        PolyMatrix m(ring_, cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) m.at(j, i) = at(i, j);
        return m;
    }

    PolyMatrix negated() const {
        PolyMatrix m(ring_, rows_, cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) m.at(i, j) = -at(i, j);
        return m;
    }

    PolyMatrix scaled(const MultiPoly& f) const {
        PolyMatrix m(ring_, rows_, cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) m.at(i, j) = at(i, j) * f;
        return m;
    }

    friend PolyMatrix operator+(const PolyMatrix& a, const PolyMatrix& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw ShapeError("matrix addition shape mismatch");
        require_same_ring(a.ring_, b.ring_, "matrix addition");
        PolyMatrix m(a.ring_, a.rows_, a.cols_);
        for (std::size_t k = 0; k < a.entries_.size(); ++k) m.entries_[k] = a.entries_[k] + b.entries_[k];
        return m;
    }

    friend PolyMatrix operator-(const PolyMatrix& a, const PolyMatrix& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw ShapeError("matrix subtraction shape mismatch");
        require_same_ring(a.ring_, b.ring_, "matrix subtraction");
        PolyMatrix m(a.ring_, a.rows_, a.cols_);
        for (std::size_t k = 0; k < a.entries_.size(); ++k) m.entries_[k] = a.entries_[k] - b.entries_[k];
        return m;
    }

    friend PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b) {
        if (a.cols_ != b.rows_) throw ShapeError("matrix product shape mismatch");
        require_same_ring(a.ring_, b.ring_, "matrix product");
        PolyMatrix m(a.ring_, a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t j = 0; j < b.cols_; ++j) {
                MultiPoly s = MultiPoly::zero(a.ring_);
                for (std::size_t k = 0; k < a.cols_; ++k) s += a.at(i, k) * b.at(k, j);
                m.at(i, j) = s;
            }
        return m;
    }

    std::vector<MultiPoly> apply(const std::vector<MultiPoly>& v) const {
        if (v.size() != cols_) throw ShapeError("matrix apply shape mismatch");
        std::vector<MultiPoly> out;
        out.reserve(rows_);
        for (std::size_t i = 0; i < rows_; ++i) {
            MultiPoly s = MultiPoly::zero(ring_);
            for (std::size_t j = 0; j < cols_; ++j) s += at(i, j) * v[j];
            out.push_back(std::move(s));
        }
        return out;
    }

    std::vector<MultiPoly> column(std::size_t j) const {
        std::vector<MultiPoly> out;
        out.reserve(rows_);
        for (std::size_t i = 0; i < rows_; ++i) out.push_back(at(i, j));
        return out;
    }

    std::vector<MultiPoly> row(std::size_t i) const {
        std::vector<MultiPoly> out;
        out.reserve(cols_);
        for (std::size_t j = 0; j < cols_; ++j) out.push_back(at(i, j));
        return out;
    }

    bool is_antisymmetric() const {
        if (rows_ != cols_) return false;
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = i; j < cols_; ++j)
                if (at(i, j) != -at(j, i)) return false;
        return true;
    }

    /// Division-free determinant by expansion over column subsets (memoized
    /// minor expansion), exact over the polynomial ring.
    MultiPoly determinant() const {
        if (rows_ != cols_) throw ShapeError("determinant of non-square matrix");
        if (rows_ == 0) return MultiPoly::constant(ring_, Rational(1));
        if (rows_ > 20) throw ShapeError("determinant: matrix too large");
        std::map<std::uint32_t, MultiPoly> memo;
        std::uint32_t full = (rows_ >= 32) ? 0xffffffffu : ((1u << rows_) - 1u);
        return minor_det(full, 0, memo);
    }

    friend bool operator==(const PolyMatrix& a, const PolyMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && same_ring(a.ring_, b.ring_) &&
               a.entries_ == b.entries_;
    }
    friend bool operator!=(const PolyMatrix& a, const PolyMatrix& b) { return !(a == b); }

    /// Square submatrix picking the given rows and columns, in order.
    PolyMatrix submatrix(const std::vector<std::size_t>& rs, const std::vector<std::size_t>& cs) const {
        PolyMatrix m(ring_, rs.size(), cs.size());
        for (std::size_t i = 0; i < rs.size(); ++i)
            for (std::size_t j = 0; j < cs.size(); ++j) m.at(i, j) = at(rs[i], cs[j]);
        return m;
    }

    static PolyMatrix block_diag(const PolyMatrix& a, const PolyMatrix& b) {
        require_same_ring(a.ring_, b.ring_, "block diagonal");
        PolyMatrix m(a.ring_, a.rows_ + b.rows_, a.cols_ + b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t j = 0; j < a.cols_; ++j) m.at(i, j) = a.at(i, j);
        for (std::size_t i = 0; i < b.rows_; ++i)
            for (std::size_t j = 0; j < b.cols_; ++j) m.at(a.rows_ + i, a.cols_ + j) = b.at(i, j);
        return m;
    }

private:
    // det of the submatrix with columns in `colMask`, rows from `row` down.
    MultiPoly minor_det(std::uint32_t colMask, std::size_t row,
                        std::map<std::uint32_t, MultiPoly>& memo) const {
        if (row == rows_) return MultiPoly::constant(ring_, Rational(1));
        auto it = memo.find(colMask);
        if (it != memo.end()) return it->second;
        MultiPoly acc = MultiPoly::zero(ring_);
        int sign = 1; // flips only over columns still present in the mask
        for (std::size_t j = 0; j < cols_; ++j) {
            if (!(colMask & (1u << j))) continue;
            const MultiPoly& e = at(row, j);
            if (!e.is_zero()) {
                MultiPoly sub = minor_det(colMask & ~(1u << j), row + 1, memo);
                MultiPoly term = e * sub;
                acc += (sign > 0) ? term : -term;
            }
            sign = -sign;
        }
        memo.emplace(colMask, acc);
        return acc;
    }

    RingPtr ring_;
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<MultiPoly> entries_;
};

} // namespace symred
