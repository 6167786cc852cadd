#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

#include "valuedom/error.hpp"

namespace valuedom {

using Vector = std::vector<double>;

/**
 * @brief Dense row-major matrix of doubles.
 *
 * Small and value-semantic: the toolkit works at desk scale (a few hundred
 * sectors at most), so everything is stored dense and copied freely.
 */
class Matrix {
public:
    Matrix() = default;

    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    Matrix(std::initializer_list<std::initializer_list<double>> rows) {
        rows_ = rows.size();
        cols_ = rows_ ? rows.begin()->size() : 0;
        data_.reserve(rows_ * cols_);
        for (const auto& r : rows) {
            if (r.size() != cols_)
                fail(Errc::shape_mismatch, "ragged initializer list");
            data_.insert(data_.end(), r.begin(), r.end());
        }
    }

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    static Matrix diagonal(const Vector& d) {
        Matrix m(d.size(), d.size());
        for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
        return m;
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool square() const noexcept { return rows_ == cols_; }

    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    const std::vector<double>& data() const noexcept { return data_; }

    Matrix transposed() const {
        Matrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    bool all_nonnegative() const {
        return std::all_of(data_.begin(), data_.end(), [](double v) { return v >= 0.0; });
    }

    bool all_positive() const {
        return std::all_of(data_.begin(), data_.end(), [](double v) { return v > 0.0; });
    }

    double min_entry() const {
        return data_.empty() ? 0.0 : *std::min_element(data_.begin(), data_.end());
    }

    double max_abs() const {
        double m = 0.0;
        for (double v : data_) m = std::max(m, std::abs(v));
        return m;
    }

    /// Largest row sum of absolute values (the induced infinity norm).
    double inf_norm() const {
        double m = 0.0;
        for (std::size_t i = 0; i < rows_; ++i) {
            double s = 0.0;
            for (std::size_t j = 0; j < cols_; ++j) s += std::abs((*this)(i, j));
            m = std::max(m, s);
        }
        return m;
    }

    Matrix& operator+=(const Matrix& o) {
        require_same_shape(o);
        for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
        return *this;
    }

    Matrix& operator-=(const Matrix& o) {
        require_same_shape(o);
        for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
        return *this;
    }

    Matrix& operator*=(double s) {
        for (double& v : data_) v *= s;
        return *this;
    }

    friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
    friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
    friend Matrix operator*(Matrix a, double s) { return a *= s; }
    friend Matrix operator*(double s, Matrix a) { return a *= s; }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.rows_) fail(Errc::shape_mismatch, "matrix product shape mismatch");
        Matrix c(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const double aik = a(i, k);
                if (aik == 0.0) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
            }
        return c;
    }

private:
    void require_same_shape(const Matrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_)
            fail(Errc::shape_mismatch, "matrix shape mismatch");
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

// ---------------------------------------------------------------------------
// Vector helpers
// ---------------------------------------------------------------------------

inline double dot(const Vector& a, const Vector& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline double sum(const Vector& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s;
}

inline double max_abs(const Vector& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

inline double min_element(const Vector& v) {
    return v.empty() ? 0.0 : *std::min_element(v.begin(), v.end());
}

inline bool all_positive(const Vector& v) {
    return std::all_of(v.begin(), v.end(), [](double x) { return x > 0.0; });
}

inline Vector scaled(Vector v, double s) {
    for (double& x : v) x *= s;
    return v;
}

/// y = M x
inline Vector multiply(const Matrix& m, const Vector& x) {
    if (m.cols() != x.size()) fail(Errc::shape_mismatch, "matrix-vector shape mismatch");
    Vector y(m.rows(), 0.0);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < m.cols(); ++j) s += m(i, j) * x[j];
        y[i] = s;
    }
    return y;
}

/// y^T = x^T M (premultiplication by a row vector)
inline Vector premultiply(const Vector& x, const Matrix& m) {
    if (m.rows() != x.size()) fail(Errc::shape_mismatch, "vector-matrix shape mismatch");
    Vector y(m.cols(), 0.0);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        const double xi = x[i];
        if (xi == 0.0) continue;
        for (std::size_t j = 0; j < m.cols(); ++j) y[j] += xi * m(i, j);
    }
    return y;
}

// ---------------------------------------------------------------------------
// LU factorization with partial pivoting
// ---------------------------------------------------------------------------

/**
 * @brief LU decomposition (Doolittle, partial pivoting) of a square matrix.
 *
 * Factor once, then solve against any number of right-hand sides. Singular
 * inputs surface as a DomainError at factorization time.
 */
class LuDecomposition {
public:
    explicit LuDecomposition(Matrix a) : lu_(std::move(a)) {
        if (!lu_.square()) fail(Errc::non_square, "LU requires a square matrix");
        const std::size_t n = lu_.rows();
        perm_.resize(n);
        for (std::size_t i = 0; i < n; ++i) perm_[i] = i;

        for (std::size_t k = 0; k < n; ++k) {
            std::size_t piv = k;
            double best = std::abs(lu_(k, k));
            for (std::size_t i = k + 1; i < n; ++i) {
                const double v = std::abs(lu_(i, k));
                if (v > best) { best = v; piv = i; }
            }
            if (best == 0.0) fail(Errc::domain_error, "singular matrix in LU factorization");
            if (piv != k) {
                std::swap(perm_[piv], perm_[k]);
                for (std::size_t j = 0; j < n; ++j) std::swap(lu_(piv, j), lu_(k, j));
            }
            for (std::size_t i = k + 1; i < n; ++i) {
                lu_(i, k) /= lu_(k, k);
                const double lik = lu_(i, k);
                if (lik == 0.0) continue;
                for (std::size_t j = k + 1; j < n; ++j) lu_(i, j) -= lik * lu_(k, j);
            }
        }
    }

    std::size_t order() const noexcept { return lu_.rows(); }

    Vector solve(const Vector& b) const {
        const std::size_t n = order();
        if (b.size() != n) fail(Errc::shape_mismatch, "rhs length mismatch");
        Vector y(n);
        for (std::size_t i = 0; i < n; ++i) {
            double s = b[perm_[i]];
            for (std::size_t j = 0; j < i; ++j) s -= lu_(i, j) * y[j];
            y[i] = s;
        }
        for (std::size_t ii = n; ii-- > 0;) {
            double s = y[ii];
            for (std::size_t j = ii + 1; j < n; ++j) s -= lu_(ii, j) * y[j];
            y[ii] = s / lu_(ii, ii);
        }
        return y;
    }

    /// Column-by-column solve of A X = B.
    Matrix solve(const Matrix& b) const {
        const std::size_t n = order();
        if (b.rows() != n) fail(Errc::shape_mismatch, "rhs row count mismatch");
        Matrix x(n, b.cols());
        Vector col(n);
        for (std::size_t j = 0; j < b.cols(); ++j) {
            for (std::size_t i = 0; i < n; ++i) col[i] = b(i, j);
            Vector sol = solve(col);
            for (std::size_t i = 0; i < n; ++i) x(i, j) = sol[i];
        }
        return x;
    }

private:
    Matrix lu_;
    std::vector<std::size_t> perm_;
};

/// Solve A X = B with one step of iterative refinement to tighten residuals.
inline Matrix solve_refined(const Matrix& a, const Matrix& b) {
    LuDecomposition lu(a);
    Matrix x = lu.solve(b);
    Matrix residual = b - a * x;
    x += lu.solve(residual);
    return x;
}

inline Vector solve_refined(const Matrix& a, const Vector& b) {
    LuDecomposition lu(a);
    Vector x = lu.solve(b);
    Vector ax = multiply(a, x);
    Vector r(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) r[i] = b[i] - ax[i];
    Vector dx = lu.solve(r);
    for (std::size_t i = 0; i < b.size(); ++i) x[i] += dx[i];
    return x;
}

} // namespace valuedom
