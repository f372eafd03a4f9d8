#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "tropmirror/field.hpp"

namespace tropmirror {

/// Dense row-major matrix over an exact field. All entries must share one field.
class Matrix {
  public:
    Matrix(std::size_t rows, std::size_t cols, const Field& f)
        : rows_(rows), cols_(cols), field_(f),
          entries_(rows * cols, FieldElement::zero(f)) {}

    Matrix(std::size_t rows, std::size_t cols, std::vector<FieldElement> entries)
        : rows_(rows), cols_(cols),
          field_(entries.empty() ? Field::rationals() : entries.front().field()),
          entries_(std::move(entries)) {
        if (entries_.size() != rows_ * cols_)
            throw DomainError("bad_shape", "entry count does not match rows*cols");
        for (const auto& e : entries_)
            if (!(e.field() == field_))
                throw DomainError("mixed_field", "matrix entries live in different fields");
    }

    static Matrix identity(std::size_t n, const Field& f) {
        Matrix m(n, n, f);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = FieldElement::one(f);
        return m;
    }

    /// Builds a matrix over `f` from integer entries, row-major.
    static Matrix from_integers(std::size_t rows, std::size_t cols,
                                const std::vector<std::int64_t>& ints, const Field& f) {
        std::vector<FieldElement> es;
        es.reserve(ints.size());
        for (auto n : ints) es.push_back(FieldElement::from_integer(n, f));
        return Matrix(rows, cols, std::move(es));
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    const Field& field() const { return field_; }

    const FieldElement& at(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }
    FieldElement& at(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }

    bool operator==(const Matrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && entries_ == o.entries_;
    }

    Matrix operator*(const Matrix& o) const {
        if (cols_ != o.rows_) throw DomainError("bad_shape", "matrix product shape mismatch");
        Matrix out(rows_, o.cols_, field_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < cols_; ++k) {
                if (at(i, k).is_zero()) continue;
                for (std::size_t j = 0; j < o.cols_; ++j)
                    out.at(i, j) += at(i, k) * o.at(k, j);
            }
        return out;
    }

    std::vector<FieldElement> apply(const std::vector<FieldElement>& v) const {
        if (v.size() != cols_) throw DomainError("bad_shape", "vector length mismatch");
        std::vector<FieldElement> out(rows_, FieldElement::zero(field_));
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                out[i] += at(i, j) * v[j];
        return out;
    }

    bool is_zero() const {
        for (const auto& e : entries_)
            if (!e.is_zero()) return false;
        return true;
    }

  private:
    std::size_t rows_, cols_;
    Field field_;
    std::vector<FieldElement> entries_;
};

/// Rank by exact Gaussian elimination. Pivot: first nonzero entry in the
/// current column, lowest row index first.
inline std::size_t rank(Matrix m) {
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t pivot = r;
        while (pivot < m.rows() && m.at(pivot, c).is_zero()) ++pivot;
        if (pivot == m.rows()) continue;
        if (pivot != r)
            for (std::size_t j = c; j < m.cols(); ++j) std::swap(m.at(r, j), m.at(pivot, j));
        FieldElement p = m.at(r, c);
        for (std::size_t i = r + 1; i < m.rows(); ++i) {
            if (m.at(i, c).is_zero()) continue;
            FieldElement factor = m.at(i, c) / p;
            for (std::size_t j = c; j < m.cols(); ++j)
                m.at(i, j) -= factor * m.at(r, j);
        }
        ++r;
    }
    return r;
}

/// Exact parametrization of {x : Ax = b}: empty, or a basepoint plus a basis
/// of the kernel of A.
struct AffineSolution {
    bool consistent = false;
    std::vector<FieldElement> basepoint;                // valid when consistent
    std::vector<std::vector<FieldElement>> kernel_basis; // one vector per free column
};

inline AffineSolution solve_affine(const Matrix& a, const std::vector<FieldElement>& b) {
    if (b.size() != a.rows()) throw DomainError("bad_shape", "rhs length does not match rows");
    const Field f = a.field();
    const std::size_t n = a.cols();

    // Gauss-Jordan on the augmented matrix.
    Matrix m(a.rows(), n + 1, f);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < n; ++j) m.at(i, j) = a.at(i, j);
        if (!(b[i].field() == f)) throw DomainError("mixed_field", "rhs field differs from matrix");
        m.at(i, n) = b[i];
    }

    std::vector<std::size_t> pivot_col;
    std::size_t r = 0;
    for (std::size_t c = 0; c < n && r < m.rows(); ++c) {
        std::size_t pivot = r;
        while (pivot < m.rows() && m.at(pivot, c).is_zero()) ++pivot;
        if (pivot == m.rows()) continue;
        if (pivot != r)
            for (std::size_t j = 0; j <= n; ++j) std::swap(m.at(r, j), m.at(pivot, j));
        FieldElement p = m.at(r, c);
        for (std::size_t j = 0; j <= n; ++j) m.at(r, j) /= p;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == r || m.at(i, c).is_zero()) continue;
            FieldElement factor = m.at(i, c);
            for (std::size_t j = 0; j <= n; ++j) m.at(i, j) -= factor * m.at(r, j);
        }
        pivot_col.push_back(c);
        ++r;
    }
    for (std::size_t i = r; i < m.rows(); ++i)
        if (!m.at(i, n).is_zero()) return {};  // 0 = nonzero: inconsistent

    AffineSolution sol;
    sol.consistent = true;
    sol.basepoint.assign(n, FieldElement::zero(f));
    for (std::size_t k = 0; k < pivot_col.size(); ++k)
        sol.basepoint[pivot_col[k]] = m.at(k, n);

    std::vector<bool> is_pivot(n, false);
    for (auto c : pivot_col) is_pivot[c] = true;
    for (std::size_t c = 0; c < n; ++c) {
        if (is_pivot[c]) continue;
        std::vector<FieldElement> v(n, FieldElement::zero(f));
        v[c] = FieldElement::one(f);
        for (std::size_t k = 0; k < pivot_col.size(); ++k)
            v[pivot_col[k]] = -m.at(k, c);
        sol.kernel_basis.push_back(std::move(v));
    }
    return sol;
}

} // namespace tropmirror
