#pragma once

#include "quiverhw/field.hpp"

#include <cassert>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

namespace quiverhw {

/// Dense row-major matrix over an exact field. Zero-sized dimensions are
/// legal and common (a representation is often zero at some vertex).
template <class K>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols) {}

    static Matrix identity(std::size_t n, const K& one)
    {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = one;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }

    K& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const K& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    bool is_zero() const
    {
        for (const auto& x : data_)
            if (!quiverhw::is_zero(x)) return false;
        return true;
    }

    std::vector<K> column(std::size_t c) const
    {
        std::vector<K> v(rows_);
        for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
        return v;
    }

    static Matrix from_columns(std::size_t rows, const std::vector<std::vector<K>>& cols)
    {
        Matrix m(rows, cols.size());
        for (std::size_t c = 0; c < cols.size(); ++c) {
            assert(cols[c].size() == rows);
            for (std::size_t r = 0; r < rows; ++r) m(r, c) = cols[c][r];
        }
        return m;
    }

    Matrix transpose() const
    {
        Matrix t(cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
        return t;
    }

    friend Matrix operator*(const Matrix& a, const Matrix& b)
    {
        if (a.cols_ != b.rows_) throw std::invalid_argument("matrix shape mismatch in product");
        Matrix out(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const K& x = a(i, k);
                if (quiverhw::is_zero(x)) continue;
                for (std::size_t j = 0; j < b.cols_; ++j)
                    if (!quiverhw::is_zero(b(k, j))) out(i, j) += x * b(k, j);
            }
        return out;
    }

    std::vector<K> apply(const std::vector<K>& v) const
    {
        assert(v.size() == cols_);
        std::vector<K> out(rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < cols_; ++k)
                if (!quiverhw::is_zero(v[k]) && !quiverhw::is_zero((*this)(i, k)))
                    out[i] += (*this)(i, k) * v[k];
        return out;
    }

    friend Matrix operator+(Matrix a, const Matrix& b)
    {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("matrix shape mismatch in sum");
        for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] += b.data_[i];
        return a;
    }

    friend Matrix operator-(Matrix a, const Matrix& b)
    {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("matrix shape mismatch in difference");
        for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] -= b.data_[i];
        return a;
    }

    Matrix scaled(const K& s) const
    {
        Matrix m = *this;
        for (auto& x : m.data_) x *= s;
        return m;
    }

    /// [A | B]
    static Matrix hstack(const Matrix& a, const Matrix& b)
    {
        if (a.rows_ != b.rows_) throw std::invalid_argument("hstack row mismatch");
        Matrix m(a.rows_, a.cols_ + b.cols_);
        for (std::size_t r = 0; r < a.rows_; ++r) {
            for (std::size_t c = 0; c < a.cols_; ++c) m(r, c) = a(r, c);
            for (std::size_t c = 0; c < b.cols_; ++c) m(r, a.cols_ + c) = b(r, c);
        }
        return m;
    }

    Matrix rows_range(std::size_t begin, std::size_t end) const
    {
        Matrix m(end - begin, cols_);
        for (std::size_t r = begin; r < end; ++r)
            for (std::size_t c = 0; c < cols_; ++c) m(r - begin, c) = (*this)(r, c);
        return m;
    }

    Matrix cols_subset(const std::vector<std::size_t>& which) const
    {
        Matrix m(rows_, which.size());
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < which.size(); ++c) m(r, c) = (*this)(r, which[c]);
        return m;
    }

    friend bool operator==(const Matrix& a, const Matrix& b)
    {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<K> data_;
};

/// In-place reduced row echelon form; returns the pivot columns.
template <class K>
std::vector<std::size_t> rref(Matrix<K>& m)
{
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
        std::size_t sel = row;
        while (sel < m.rows() && is_zero(m(sel, col))) ++sel;
        if (sel == m.rows()) continue;
        if (sel != row)
            for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m(sel, c), m(row, c));
        const K inv = reciprocal(m(row, col));
        for (std::size_t c = col; c < m.cols(); ++c) m(row, c) *= inv;
        for (std::size_t r = 0; r < m.rows(); ++r) {
            if (r == row || is_zero(m(r, col))) continue;
            const K f = m(r, col);
            for (std::size_t c = col; c < m.cols(); ++c)
                if (!is_zero(m(row, c))) m(r, c) -= f * m(row, c);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

template <class K>
std::size_t rank(Matrix<K> m)
{
    return rref(m).size();
}

/// Basis of the null space, as the columns of the returned matrix.
template <class K>
Matrix<K> kernel(Matrix<K> m, const K& one)
{
    const std::size_t n = m.cols();
    const auto pivots = rref(m);
    std::vector<bool> is_pivot(n, false);
    for (auto p : pivots) is_pivot[p] = true;
    std::vector<std::vector<K>> basis;
    for (std::size_t free = 0; free < n; ++free) {
        if (is_pivot[free]) continue;
        std::vector<K> v(n);
        v[free] = one;
        for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m(r, free);
        basis.push_back(std::move(v));
    }
    return Matrix<K>::from_columns(n, basis);
}

/// Basis of the column space, chosen among the original columns.
template <class K>
Matrix<K> column_basis(const Matrix<K>& m)
{
    Matrix<K> work = m;
    return m.cols_subset(rref(work));
}

/// A subspace of K^d together with a complement and the inverse change of
/// basis, so that coordinates along the subspace and in the quotient can both
/// be read off by one matrix product.
template <class K>
struct Splitting {
    Matrix<K> basis;       // d x s, full column rank
    Matrix<K> complement;  // d x (d - s)
    Matrix<K> inverse;     // inverse of [basis | complement]

    std::size_t ambient() const { return basis.rows(); }
    std::size_t dim() const { return basis.cols(); }
    std::size_t codim() const { return complement.cols(); }

    /// Coordinates along the subspace of a vector known to lie in it.
    Matrix<K> sub_coords() const { return inverse.rows_range(0, dim()); }
    /// Projection onto the quotient, in complement coordinates.
    Matrix<K> quotient_coords() const { return inverse.rows_range(dim(), ambient()); }
};

/// Builds a splitting for the span of the columns of `spanning`.
template <class K>
Splitting<K> split(const Matrix<K>& spanning, std::size_t ambient, const K& one)
{
    Splitting<K> s;
    s.basis = spanning.cols() ? column_basis(spanning) : Matrix<K>(ambient, 0);
    // Complement: standard basis vectors not in the pivot set of [basis | I].
    Matrix<K> aug = Matrix<K>::hstack(s.basis, Matrix<K>::identity(ambient, one));
    Matrix<K> work = aug;
    const auto pivots = rref(work);
    std::vector<std::size_t> comp;
    for (auto p : pivots)
        if (p >= s.basis.cols()) comp.push_back(p);
    s.complement = aug.cols_subset(comp);
    Matrix<K> full = Matrix<K>::hstack(s.basis, s.complement);
    // Invert by row reducing [full | I].
    Matrix<K> inv_work = Matrix<K>::hstack(full, Matrix<K>::identity(ambient, one));
    rref(inv_work);
    s.inverse = Matrix<K>(ambient, ambient);
    for (std::size_t r = 0; r < ambient; ++r)
        for (std::size_t c = 0; c < ambient; ++c) s.inverse(r, c) = inv_work(r, ambient + c);
    return s;
}

/// True when every column of `vectors` lies in the column span of `space`.
template <class K>
bool spans_contain(const Matrix<K>& space, const Matrix<K>& vectors)
{
    if (vectors.cols() == 0) return true;
    return rank(Matrix<K>::hstack(space, vectors)) == rank(space);
}

} // namespace quiverhw
