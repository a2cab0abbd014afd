#pragma once

#include <cassert>
#include <optional>
#include <vector>

#include "dgt/scalar.hpp"

namespace dgt {

struct ShapeMismatch : std::runtime_error {
    ShapeMismatch() : std::runtime_error("matrix shapes do not match") {}
};

using Vec = std::vector<Scalar>;

/// Dense matrix over an exact field.  All elimination is exact; there is no
/// tolerance anywhere.
class Matrix {
public:
    Matrix() = default;
    Matrix(FieldSpec field, int rows, int cols)
        : field_(field), rows_(rows), cols_(cols),
          data_(static_cast<std::size_t>(rows) * cols, Scalar::zero(field)) {}

    static Matrix identity(FieldSpec field, int n) {
        Matrix m(field, n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = Scalar::one(field);
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    const FieldSpec& field() const { return field_; }

    Scalar& at(int r, int c) { return data_[static_cast<std::size_t>(r) * cols_ + c]; }
    const Scalar& at(int r, int c) const {
        return data_[static_cast<std::size_t>(r) * cols_ + c];
    }

    bool is_zero() const {
        for (const auto& x : data_)
            if (!x.is_zero()) return false;
        return true;
    }

    bool operator==(const Matrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) return false;
        for (std::size_t i = 0; i < data_.size(); ++i)
            if (data_[i] != o.data_[i]) return false;
        return true;
    }
    bool operator!=(const Matrix& o) const { return !(*this == o); }

    Matrix operator*(const Matrix& o) const {
        if (cols_ != o.rows_) throw ShapeMismatch();
        Matrix m(field_, rows_, o.cols_);
        for (int i = 0; i < rows_; ++i)
            for (int k = 0; k < cols_; ++k) {
                if (at(i, k).is_zero()) continue;
                for (int j = 0; j < o.cols_; ++j)
                    m.at(i, j) += at(i, k) * o.at(k, j);
            }
        return m;
    }

    Matrix operator+(const Matrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) throw ShapeMismatch();
        Matrix m = *this;
        for (std::size_t i = 0; i < data_.size(); ++i) m.data_[i] += o.data_[i];
        return m;
    }

    Matrix operator-() const {
        Matrix m = *this;
        for (auto& x : m.data_) x = -x;
        return m;
    }
    Matrix operator-(const Matrix& o) const { return *this + (-o); }

    Matrix scaled(const Scalar& c) const {
        Matrix m = *this;
        for (auto& x : m.data_) x *= c;
        return m;
    }

    Vec apply(const Vec& v) const {
        assert(static_cast<int>(v.size()) == cols_);
        Vec out(rows_, Scalar::zero(field_));
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j)
                if (!at(i, j).is_zero()) out[i] += at(i, j) * v[j];
        return out;
    }

    Matrix transposed() const {
        Matrix m(field_, cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) m.at(j, i) = at(i, j);
        return m;
    }

    Matrix column(int j) const {
        Matrix m(field_, rows_, 1);
        for (int i = 0; i < rows_; ++i) m.at(i, 0) = at(i, j);
        return m;
    }

    void set_column(int j, const Vec& v) {
        assert(static_cast<int>(v.size()) == rows_);
        for (int i = 0; i < rows_; ++i) at(i, j) = v[i];
    }

    Vec column_vec(int j) const {
        Vec v(rows_, Scalar::zero(field_));
        for (int i = 0; i < rows_; ++i) v[i] = at(i, j);
        return v;
    }

    static Matrix hcat(const Matrix& a, const Matrix& b) {
        if (a.rows_ != b.rows_) throw ShapeMismatch();
        Matrix m(a.field_, a.rows_, a.cols_ + b.cols_);
        for (int i = 0; i < a.rows_; ++i) {
            for (int j = 0; j < a.cols_; ++j) m.at(i, j) = a.at(i, j);
            for (int j = 0; j < b.cols_; ++j) m.at(i, a.cols_ + j) = b.at(i, j);
        }
        return m;
    }

    static Matrix from_columns(FieldSpec field, int rows, const std::vector<Vec>& cols) {
        Matrix m(field, rows, static_cast<int>(cols.size()));
        for (int j = 0; j < static_cast<int>(cols.size()); ++j) m.set_column(j, cols[j]);
        return m;
    }

    /// In-place reduced row echelon form; returns pivot columns.
    std::vector<int> rref() {
        std::vector<int> pivots;
        int row = 0;
        for (int col = 0; col < cols_ && row < rows_; ++col) {
            int pr = -1;
            for (int i = row; i < rows_; ++i)
                if (!at(i, col).is_zero()) { pr = i; break; }
            if (pr < 0) continue;
            if (pr != row)
                for (int j = 0; j < cols_; ++j) std::swap(at(pr, j), at(row, j));
            Scalar piv_inv = at(row, col).inv();
            for (int j = col; j < cols_; ++j) at(row, j) *= piv_inv;
            for (int i = 0; i < rows_; ++i) {
                if (i == row || at(i, col).is_zero()) continue;
                Scalar f = at(i, col);
                for (int j = col; j < cols_; ++j) at(i, j) -= f * at(row, j);
            }
            pivots.push_back(col);
            ++row;
        }
        return pivots;
    }

    int rank() const {
        Matrix m = *this;
        return static_cast<int>(m.rref().size());
    }

    /// Basis of the nullspace, one kernel vector per column.
    Matrix kernel() const {
        Matrix m = *this;
        std::vector<int> pivots = m.rref();
        std::vector<bool> is_pivot(cols_, false);
        for (int p : pivots) is_pivot[p] = true;
        int nfree = cols_ - static_cast<int>(pivots.size());
        Matrix k(field_, cols_, nfree);
        int kc = 0;
        for (int col = 0; col < cols_; ++col) {
            if (is_pivot[col]) continue;
            k.at(col, kc) = Scalar::one(field_);
            for (int pi = 0; pi < static_cast<int>(pivots.size()); ++pi)
                k.at(pivots[pi], kc) = -m.at(pi, col);
            ++kc;
        }
        return k;
    }

    /// Any solution x of Ax = b, or nullopt when b is outside the image.
    std::optional<Vec> solve(const Vec& b) const {
        assert(static_cast<int>(b.size()) == rows_);
        Matrix aug = hcat(*this, from_columns(field_, rows_, {b}));
        std::vector<int> pivots = aug.rref();
        if (!pivots.empty() && pivots.back() == cols_) return std::nullopt;
        Vec x(cols_, Scalar::zero(field_));
        for (int pi = 0; pi < static_cast<int>(pivots.size()); ++pi)
            x[pivots[pi]] = aug.at(pi, cols_);
        return x;
    }

    /// Solves AX = B columnwise; nullopt when any column is unsolvable.
    std::optional<Matrix> solve(const Matrix& b) const {
        Matrix x(field_, cols_, b.cols());
        for (int j = 0; j < b.cols(); ++j) {
            auto col = solve(b.column_vec(j));
            if (!col) return std::nullopt;
            x.set_column(j, *col);
        }
        return x;
    }

    /// Columns spanning the image, taken from this matrix at pivot positions.
    Matrix image() const {
        Matrix m = *this;
        std::vector<int> pivots = m.rref();
        Matrix im(field_, rows_, static_cast<int>(pivots.size()));
        for (int j = 0; j < static_cast<int>(pivots.size()); ++j)
            im.set_column(j, column_vec(pivots[j]));
        return im;
    }

    /// Canonical reduced column form of the column span (unique per subspace).
    Matrix column_reduced() const {
        Matrix t = transposed();
        std::vector<int> pivots = t.rref();
        Matrix out(field_, rows_, static_cast<int>(pivots.size()));
        for (int i = 0; i < static_cast<int>(pivots.size()); ++i)
            for (int r = 0; r < rows_; ++r) out.at(r, i) = t.at(i, r);
        return out;
    }

    std::optional<Matrix> inverse() const {
        if (rows_ != cols_) return std::nullopt;
        Matrix aug = hcat(*this, identity(field_, rows_));
        std::vector<int> pivots = aug.rref();
        if (static_cast<int>(pivots.size()) != rows_ || (rows_ > 0 && pivots.back() >= rows_))
            return std::nullopt;
        for (int p : pivots)
            if (p >= rows_) return std::nullopt;
        Matrix inv(field_, rows_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < rows_; ++j) inv.at(i, j) = aug.at(i, rows_ + j);
        return inv;
    }

private:
    FieldSpec field_;
    int rows_ = 0, cols_ = 0;
    Vec data_;
};

}  // namespace dgt
