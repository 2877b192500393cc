#pragma once

#include "errors.hpp"
#include "rational.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <complex>
#include <cstddef>
#include <string>
#include <vector>

namespace qcclab {

using Complex = std::complex<double>;

/// Tolerances shared by every floating-point invariant check. Rational
/// scalars ignore them and compare exactly.
inline constexpr double kOperatorTolerance = 1e-10;
inline constexpr double kTraceTolerance = 1e-12;

/// Field operations the matrix code needs from a scalar type.
template <class T>
struct ScalarTraits;

template <>
struct ScalarTraits<Complex> {
    static constexpr bool exact = false;
    static Complex zero() { return {0.0, 0.0}; }
    static Complex one() { return {1.0, 0.0}; }
    static Complex conj(const Complex& z) { return std::conj(z); }
    static bool is_zero(const Complex& z) { return z.real() == 0.0 && z.imag() == 0.0; }
    static bool near(const Complex& a, const Complex& b, double tol) { return std::abs(a - b) <= tol; }
    static double real(const Complex& z) { return z.real(); }
    static Complex to_complex(const Complex& z) { return z; }
    static Complex ratio(long num, long den) { return {static_cast<double>(num) / static_cast<double>(den), 0.0}; }
};

template <>
struct ScalarTraits<double> {
    static constexpr bool exact = false;
    static double zero() { return 0.0; }
    static double one() { return 1.0; }
    static double conj(double x) { return x; }
    static bool is_zero(double x) { return x == 0.0; }
    static bool near(double a, double b, double tol) { return std::abs(a - b) <= tol; }
    static double real(double x) { return x; }
    static Complex to_complex(double x) { return {x, 0.0}; }
    static double ratio(long num, long den) { return static_cast<double>(num) / static_cast<double>(den); }
};

template <>
struct ScalarTraits<Rational> {
    static constexpr bool exact = true;
    static Rational zero() { return Rational(0); }
    static Rational one() { return Rational(1); }
    static Rational conj(const Rational& x) { return x; }
    static bool is_zero(const Rational& x) { return x == 0; }
    static bool near(const Rational& a, const Rational& b, double) { return a == b; }
    static Rational real(const Rational& x) { return x; }
    static Complex to_complex(const Rational& x) { return {to_double(x), 0.0}; }
    static Rational ratio(long num, long den) { return Rational(BigInt(num), BigInt(den)); }
};

/// Real part type: double for floating scalars, Rational for exact ones.
template <class T>
using RealOf = decltype(ScalarTraits<T>::real(std::declval<T>()));

/// Dense row-major matrix over a field.
template <class T>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, ScalarTraits<T>::zero()) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = ScalarTraits<T>::one();
        return m;
    }

    /// Builds from nested rows; all rows must have the same length.
    static Matrix from_rows(const std::vector<std::vector<T>>& rows) {
        const std::size_t r = rows.size();
        const std::size_t c = r == 0 ? 0 : rows.front().size();
        Matrix m(r, c);
        for (std::size_t i = 0; i < r; ++i) {
            if (rows[i].size() != c) throw DimensionMismatch("ragged matrix rows");
            for (std::size_t j = 0; j < c; ++j) m(i, j) = rows[i][j];
        }
        return m;
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool square() const noexcept { return rows_ == cols_; }

    T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

template <class T>
Matrix<T> operator+(const Matrix<T>& a, const Matrix<T>& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionMismatch("matrix sum: shape mismatch");
    Matrix<T> out(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j) + b(i, j);
    return out;
}

template <class T>
Matrix<T> operator-(const Matrix<T>& a, const Matrix<T>& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionMismatch("matrix difference: shape mismatch");
    Matrix<T> out(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j) - b(i, j);
    return out;
}

template <class T>
Matrix<T> scale(const Matrix<T>& a, const T& s) {
    Matrix<T> out(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j) * s;
    return out;
}

template <class T>
Matrix<T> operator*(const Matrix<T>& a, const Matrix<T>& b) {
    if (a.cols() != b.rows()) throw DimensionMismatch("matrix product: inner dimensions differ");
    Matrix<T> out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            if (ScalarTraits<T>::is_zero(a(i, k))) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += a(i, k) * b(k, j);
        }
    return out;
}

template <class T>
T trace(const Matrix<T>& a) {
    if (!a.square()) throw DimensionMismatch("trace of a non-square matrix");
    T t = ScalarTraits<T>::zero();
    for (std::size_t i = 0; i < a.rows(); ++i) t += a(i, i);
    return t;
}

template <class T>
Matrix<T> adjoint(const Matrix<T>& a) {
    Matrix<T> out(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out(j, i) = ScalarTraits<T>::conj(a(i, j));
    return out;
}

template <class T>
Matrix<T> kron(const Matrix<T>& a, const Matrix<T>& b) {
    Matrix<T> out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i1 = 0; i1 < a.rows(); ++i1)
        for (std::size_t j1 = 0; j1 < a.cols(); ++j1) {
            if (ScalarTraits<T>::is_zero(a(i1, j1))) continue;
            for (std::size_t i2 = 0; i2 < b.rows(); ++i2)
                for (std::size_t j2 = 0; j2 < b.cols(); ++j2)
                    out(i1 * b.rows() + i2, j1 * b.cols() + j2) = a(i1, j1) * b(i2, j2);
        }
    return out;
}

/// One non-zero entry of a matrix.
template <class T>
struct SparseEntry {
    std::size_t row;
    std::size_t col;
    T value;
};

template <class T>
std::vector<SparseEntry<T>> nonzero_entries(const Matrix<T>& m) {
    std::vector<SparseEntry<T>> out;
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c)
            if (!ScalarTraits<T>::is_zero(m(r, c))) out.push_back({r, c, m(r, c)});
    return out;
}

/// Tr((X (x) Y) rho) over the non-zero entries of rho, without materialising
/// the Kronecker product.
template <class T>
T kron_trace(const Matrix<T>& x, const Matrix<T>& y, const std::vector<SparseEntry<T>>& rho_nonzero,
             std::size_t rho_dim) {
    const std::size_t dx = x.rows();
    const std::size_t dy = y.rows();
    if (!x.square() || !y.square() || rho_dim != dx * dy)
        throw DimensionMismatch("kron_trace: dim(X)*dim(Y) = " + std::to_string(dx * dy) +
                                " but dim(rho) = " + std::to_string(rho_dim));
    T acc = ScalarTraits<T>::zero();
    // (X(x)Y)_{(i1 i2),(j1 j2)} rho_{(j1 j2),(i1 i2)}
    for (const auto& e : rho_nonzero) {
        const std::size_t j1 = e.row / dy, j2 = e.row % dy;
        const std::size_t i1 = e.col / dy, i2 = e.col % dy;
        const T& xv = x(i1, j1);
        if (ScalarTraits<T>::is_zero(xv)) continue;
        const T& yv = y(i2, j2);
        if (ScalarTraits<T>::is_zero(yv)) continue;
        acc += xv * yv * e.value;
    }
    return acc;
}

template <class T>
T kron_trace(const Matrix<T>& x, const Matrix<T>& y, const Matrix<T>& rho) {
    if (!rho.square()) throw DimensionMismatch("kron_trace: rho must be square");
    return kron_trace(x, y, nonzero_entries(rho), rho.rows());
}

template <class T>
bool is_hermitian(const Matrix<T>& a, double tol) {
    if (!a.square()) return false;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = i; j < a.cols(); ++j)
            if (!ScalarTraits<T>::near(a(i, j), ScalarTraits<T>::conj(a(j, i)), tol)) return false;
    return true;
}

template <class T>
bool approx_equal(const Matrix<T>& a, const Matrix<T>& b, double tol) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (!ScalarTraits<T>::near(a(i, j), b(i, j), tol)) return false;
    return true;
}

template <class T>
Matrix<Complex> to_complex(const Matrix<T>& a) {
    Matrix<Complex> out(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = ScalarTraits<T>::to_complex(a(i, j));
    return out;
}

/// Smallest eigenvalue of a Hermitian matrix, computed in double precision.
inline double min_eigenvalue(const Matrix<Complex>& hermitian) {
    const auto n = static_cast<Eigen::Index>(hermitian.rows());
    if (n == 0) return 0.0;
    Eigen::MatrixXcd m(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            m(i, j) = hermitian(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

}  // namespace qcclab
