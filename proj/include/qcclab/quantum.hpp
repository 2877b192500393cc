#pragma once

// Exact quantum predictions for two-outcome measurements on bipartite states.
//
// Two numeric modes share one implementation: Matrix<Rational> for inputs
// whose quantities are all rational (sign-vector projectors on the maximally
// entangled state) and Matrix<Complex> for everything else. Floating-point
// checks use kOperatorTolerance / kTraceTolerance; rational checks are exact.

#include "errors.hpp"
#include "matrix.hpp"
#include "rational.hpp"
#include "sign_vector.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

namespace qcclab {

namespace detail {

template <class R>
R clamp_probability(const R& p, const char* name) {
    if constexpr (std::is_same_v<R, Rational>) {
        if (p < 0 || p > 1) throw InvariantViolation(std::string(name) + " = " + to_string(p) + " outside [0,1]");
        return p;
    } else {
        if (p < -kOperatorTolerance || p > 1.0 + kOperatorTolerance)
            throw InvariantViolation(std::string(name) + " = " + std::to_string(p) + " outside [0,1]");
        return std::clamp(p, 0.0, 1.0);
    }
}

}  // namespace detail

/// Joint outcome law of (y_A, y_B). p_mm is always the residual.
template <class R>
struct JointProbs {
    R pp{};  // (+1,+1)
    R mp{};  // (-1,+1)
    R pm{};  // (+1,-1)
    R mm{};  // (-1,-1)

    static JointProbs from_three(const R& pp, const R& mp, const R& pm) {
        JointProbs p;
        p.pp = detail::clamp_probability(pp, "p_pp");
        p.mp = detail::clamp_probability(mp, "p_mp");
        p.pm = detail::clamp_probability(pm, "p_pm");
        p.mm = detail::clamp_probability(R(1) - p.pp - p.mp - p.pm, "p_mm");
        return p;
    }

    friend bool operator==(const JointProbs&, const JointProbs&) = default;
};

/// (E[y_A y_B], E[y_A], E[y_B]).
template <class R>
struct ExpectationTriple {
    R ab{};
    R a{};
    R b{};

    friend bool operator==(const ExpectationTriple&, const ExpectationTriple&) = default;
};

template <class T>
class DensityMatrix {
public:
    /// Validates Hermiticity, unit trace and positive semidefiniteness.
    DensityMatrix(std::size_t dim_local, Matrix<T> entries) : n_(dim_local), rho_(std::move(entries)) {
        if (n_ == 0) throw InvariantViolation("density matrix: local dimension must be positive");
        if (rho_.rows() != n_ * n_ || !rho_.square())
            throw DimensionMismatch("density matrix must be " + std::to_string(n_ * n_) + "x" +
                                    std::to_string(n_ * n_));
        if (!is_hermitian(rho_, kTraceTolerance)) throw InvariantViolation("density matrix is not Hermitian");
        if (!ScalarTraits<T>::near(trace(rho_), ScalarTraits<T>::one(), kTraceTolerance))
            throw InvariantViolation("density matrix trace differs from 1");
        if (min_eigenvalue(to_complex(rho_)) < -kOperatorTolerance)
            throw InvariantViolation("density matrix is not positive semidefinite");
        nonzero_ = nonzero_entries(rho_);
    }

    std::size_t dim_local() const noexcept { return n_; }
    const Matrix<T>& matrix() const noexcept { return rho_; }
    const std::vector<SparseEntry<T>>& nonzero() const noexcept { return nonzero_; }

private:
    std::size_t n_;
    Matrix<T> rho_;
    std::vector<SparseEntry<T>> nonzero_;
};

/// Hermitian operator with spectrum in {-1,+1}, i.e. A^2 = 1.
template <class T>
class BinaryObservable {
public:
    explicit BinaryObservable(Matrix<T> a) : a_(std::move(a)) {
        if (!a_.square() || a_.rows() == 0) throw DimensionMismatch("observable must be a non-empty square matrix");
        if (!is_hermitian(a_, kOperatorTolerance)) throw InvariantViolation("observable is not Hermitian");
        if (!approx_equal(a_ * a_, Matrix<T>::identity(a_.rows()), kOperatorTolerance))
            throw InvariantViolation("observable spectrum is not contained in {-1,+1} (A^2 != 1)");
    }

    std::size_t dim() const noexcept { return a_.rows(); }
    const Matrix<T>& matrix() const noexcept { return a_; }

private:
    Matrix<T> a_;
};

/// Hermitian idempotent.
template <class T>
class Projector {
public:
    explicit Projector(Matrix<T> p) : p_(std::move(p)) {
        if (!p_.square() || p_.rows() == 0) throw DimensionMismatch("projector must be a non-empty square matrix");
        if (!is_hermitian(p_, kOperatorTolerance)) throw InvariantViolation("projector is not Hermitian");
        if (!approx_equal(p_ * p_, p_, kOperatorTolerance)) throw InvariantViolation("projector fails P^2 = P");
    }

    std::size_t dim() const noexcept { return p_.rows(); }
    const Matrix<T>& matrix() const noexcept { return p_; }

private:
    Matrix<T> p_;
};

/// P = (A + 1)/2.
template <class T>
Projector<T> observable_to_projector(const BinaryObservable<T>& a) {
    const auto& m = a.matrix();
    return Projector<T>(scale(m + Matrix<T>::identity(m.rows()), ScalarTraits<T>::ratio(1, 2)));
}

/// A = 2P - 1.
template <class T>
BinaryObservable<T> projector_to_observable(const Projector<T>& p) {
    const auto& m = p.matrix();
    return BinaryObservable<T>(scale(m, ScalarTraits<T>::ratio(2, 1)) - Matrix<T>::identity(m.rows()));
}

/// Joint outcome probabilities: p_pp = Tr((P_A(x)P_B)rho), p_mp = Tr(((1-P_A)(x)P_B)rho),
/// p_pm = Tr((P_A(x)(1-P_B))rho), p_mm the residual.
template <class T>
JointProbs<RealOf<T>> predict_joint_probs(const Projector<T>& pa, const Projector<T>& pb,
                                          const DensityMatrix<T>& rho) {
    if (pa.dim() * pb.dim() != rho.matrix().rows())
        throw DimensionMismatch("dim(P_A)*dim(P_B) = " + std::to_string(pa.dim() * pb.dim()) +
                                " but dim(sigma) = " + std::to_string(rho.matrix().rows()));
    const auto& sigma = rho.nonzero();
    const std::size_t dim = rho.matrix().rows();
    const auto id_a = Matrix<T>::identity(pa.dim());
    const auto id_b = Matrix<T>::identity(pb.dim());
    const T pp = kron_trace(pa.matrix(), pb.matrix(), sigma, dim);
    // Tr((1-P_A)(x)P_B rho) = Tr((1(x)P_B) rho) - p_pp, and likewise for p_pm.
    const T b_marg = kron_trace(id_a, pb.matrix(), sigma, dim);
    const T a_marg = kron_trace(pa.matrix(), id_b, sigma, dim);
    using Tr = ScalarTraits<T>;
    return JointProbs<RealOf<T>>::from_three(Tr::real(pp), Tr::real(b_marg - pp), Tr::real(a_marg - pp));
}

/// (Tr((A(x)B)rho), Tr((A(x)1)rho), Tr((1(x)B)rho)).
template <class T>
ExpectationTriple<RealOf<T>> predict_expectations(const BinaryObservable<T>& a, const BinaryObservable<T>& b,
                                                  const DensityMatrix<T>& rho) {
    if (a.dim() * b.dim() != rho.matrix().rows())
        throw DimensionMismatch("dim(A)*dim(B) = " + std::to_string(a.dim() * b.dim()) +
                                " but dim(sigma) = " + std::to_string(rho.matrix().rows()));
    const auto& sigma = rho.nonzero();
    const std::size_t dim = rho.matrix().rows();
    using Tr = ScalarTraits<T>;
    return {Tr::real(kron_trace(a.matrix(), b.matrix(), sigma, dim)),
            Tr::real(kron_trace(a.matrix(), Matrix<T>::identity(b.dim()), sigma, dim)),
            Tr::real(kron_trace(Matrix<T>::identity(a.dim()), b.matrix(), sigma, dim))};
}

template <class R>
ExpectationTriple<R> probs_to_expectations(const JointProbs<R>& p) {
    return {R(1) - R(2) * p.mp - R(2) * p.pm, R(-1) + R(2) * p.pp + R(2) * p.pm, R(-1) + R(2) * p.pp + R(2) * p.mp};
}

/// Inverse of probs_to_expectations. Throws InvariantViolation naming the
/// first entry that would be negative.
template <class R>
JointProbs<R> expectations_to_probs(const ExpectationTriple<R>& e) {
    const R one(1);
    const R quarter = R(1) / R(4);
    const std::array<R, 4> raw{quarter * (one + e.a + e.b + e.ab), quarter * (one - e.a + e.b - e.ab),
                               quarter * (one + e.a - e.b - e.ab), quarter * (one - e.a - e.b + e.ab)};
    static constexpr std::array<const char*, 4> names{"p_pp", "p_mp", "p_pm", "p_mm"};
    for (std::size_t i = 0; i < raw.size(); ++i) {
        bool negative;
        if constexpr (std::is_same_v<R, Rational>) negative = raw[i] < 0;
        else negative = raw[i] < -kTraceTolerance;
        if (negative) {
            std::string v;
            if constexpr (std::is_same_v<R, Rational>) v = to_string(raw[i]);
            else v = std::to_string(raw[i]);
            throw InvariantViolation("expectation triple outside the probability image: " + std::string(names[i]) +
                                     " = " + v + " < 0");
        }
    }
    return JointProbs<R>::from_three(raw[0], raw[1], raw[2]);
}

/// |e| <= 1 for each entry, 1 + e_ab >= |e_a + e_b| and 1 - e_ab >= |e_a - e_b|.
template <class R>
bool is_valid_expectation_triple(const ExpectationTriple<R>& e) {
    auto abs_ = [](const R& x) { return x < 0 ? R(-x) : x; };
    R slack(0);
    if constexpr (!std::is_same_v<R, Rational>) slack = kTraceTolerance;
    const R one(1);
    return abs_(e.ab) <= one + slack && abs_(e.a) <= one + slack && abs_(e.b) <= one + slack &&
           one + e.ab + slack >= abs_(e.a + e.b) && one - e.ab + slack >= abs_(e.a - e.b);
}

/// |psi><psi| with |psi> = n^{-1/2} sum_i |ii>.
template <class T = Rational>
DensityMatrix<T> maximally_entangled(std::size_t n) {
    if (n == 0) throw InvariantViolation("maximally_entangled: n must be positive");
    Matrix<T> rho(n * n, n * n);
    const T w = ScalarTraits<T>::ratio(1, static_cast<long>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) rho(i * n + i, j * n + j) = w;
    return DensityMatrix<T>(n, std::move(rho));
}

/// (1/n)|a><a|.
template <class T = Rational>
Projector<T> sign_vector_projector(const SignVector& a) {
    const std::size_t n = a.size();
    Matrix<T> p(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) p(i, j) = ScalarTraits<T>::ratio(a[i] * a[j], static_cast<long>(n));
    return Projector<T>(std::move(p));
}

/// Direct-trace value of p_pp for sign-vector projectors on the maximally
/// entangled state, valid for any a, b: (a.b)^2 / n^3.
inline Rational sign_vector_pp(const SignVector& a, const SignVector& b) {
    const long d = dot(a, b);
    const long n = static_cast<long>(a.size());
    return Rational(BigInt(d * d), BigInt(n) * n * n);
}

/// Target Pr[y_A = 1 and y_B = 1] = (a.b)/n^2 = f(a,b)/n. Only meaningful under
/// the promise, which is enforced.
inline Rational dj_target_probability(const SignVector& a, const SignVector& b) {
    require_promise(a, b);
    const long n = static_cast<long>(a.size());
    return Rational(BigInt(dot(a, b)), BigInt(n) * n);
}

/// Singlet (|01> - |10>)/sqrt(2).
inline DensityMatrix<Complex> singlet() {
    Matrix<Complex> rho(4, 4);
    rho(1, 1) = rho(2, 2) = 0.5;
    rho(1, 2) = rho(2, 1) = -0.5;
    return DensityMatrix<Complex>(2, std::move(rho));
}

/// u . (sigma_x, sigma_y, sigma_z) for a unit vector u.
inline BinaryObservable<Complex> pauli_observable(const std::array<double, 3>& u) {
    Matrix<Complex> m(2, 2);
    m(0, 0) = u[2];
    m(1, 1) = -u[2];
    m(0, 1) = Complex(u[0], -u[1]);
    m(1, 0) = Complex(u[0], u[1]);
    return BinaryObservable<Complex>(std::move(m));
}

}  // namespace qcclab
