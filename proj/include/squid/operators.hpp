// operators.hpp — Truncated number-basis operators and Hermitian matrix functions
//
// All operators live in the eigenbasis of the dimensionless oscillator
// (X^2 + P^2)/2 truncated to N levels. Builders are templated on the real
// scalar so the same code serves double and long double checks.

#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace squid {

template <typename Real>
using ComplexMatrix = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Real>
using ComplexVector = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, 1>;

using Operator = ComplexMatrix<double>;
using Index = Eigen::Index;
using cd = std::complex<double>;

class SizeError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

template <typename Real>
struct Ladder {
    ComplexMatrix<Real> a;
    ComplexMatrix<Real> a_dagger;
};

template <typename Real>
struct Quadratures {
    ComplexMatrix<Real> x;
    ComplexMatrix<Real> p;
};

inline void require_basis_size(Index n)
{
    if (n < 2) throw SizeError("basis size must be at least 2 (got " + std::to_string(n) + ")");
}

// a has sqrt(n) on the first superdiagonal.
template <typename Real = double>
Ladder<Real> build_ladder(Index n)
{
    require_basis_size(n);
    ComplexMatrix<Real> a = ComplexMatrix<Real>::Zero(n, n);
    for (Index k = 1; k < n; ++k) a(k - 1, k) = std::sqrt(static_cast<Real>(k));
    ComplexMatrix<Real> ad = a.adjoint();
    return {std::move(a), std::move(ad)};
}

// X = (a + a^dag)/sqrt2, P = (a - a^dag)/(i sqrt2).
template <typename Real = double>
Quadratures<Real> build_xp(Index n)
{
    const auto ladder = build_ladder<Real>(n);
    const Real s = Real(1) / std::sqrt(Real(2));
    const std::complex<Real> minus_i(0, -1);
    ComplexMatrix<Real> x = s * (ladder.a + ladder.a_dagger);
    ComplexMatrix<Real> p = (s * minus_i) * (ladder.a - ladder.a_dagger);
    return {std::move(x), std::move(p)};
}

// diag(0, 1, ..., N-1) + 1/2: the exact truncated form of (X^2 + P^2)/2.
template <typename Real = double>
ComplexMatrix<Real> oscillator_hamiltonian(Index n)
{
    require_basis_size(n);
    ComplexMatrix<Real> h = ComplexMatrix<Real>::Zero(n, n);
    for (Index k = 0; k < n; ++k) h(k, k) = static_cast<Real>(k) + Real(0.5);
    return h;
}

// Parity operator diag((-1)^n); X and P are odd under conjugation by it.
template <typename Real = double>
ComplexMatrix<Real> parity_operator(Index n)
{
    ComplexMatrix<Real> pi = ComplexMatrix<Real>::Zero(n, n);
    for (Index k = 0; k < n; ++k) pi(k, k) = (k % 2 == 0) ? Real(1) : Real(-1);
    return pi;
}

template <typename Derived>
typename Derived::RealScalar max_asymmetry(const Eigen::MatrixBase<Derived>& a)
{
    return (a - a.adjoint()).cwiseAbs().maxCoeff();
}

template <typename Derived>
bool is_hermitian(const Eigen::MatrixBase<Derived>& a, typename Derived::RealScalar rel_tol = 1e-12)
{
    const auto scale = a.cwiseAbs().maxCoeff();
    return max_asymmetry(a) <= rel_tol * (scale > 0 ? scale : 1);
}

// f(A + phase I) through the spectral decomposition of a Hermitian A.
template <typename Derived, typename Function>
typename Derived::PlainObject hermitian_function(const Eigen::MatrixBase<Derived>& a, Function&& f,
                                                 typename Derived::RealScalar phase = 0)
{
    using Plain = typename Derived::PlainObject;
    if (a.rows() != a.cols()) throw SizeError("hermitian_function: matrix is not square");
    if (!is_hermitian(a, 1e-12))
        throw DomainError("hermitian_function: input is not Hermitian (max |A - A^dag| = " +
                          std::to_string(static_cast<double>(max_asymmetry(a))) + ")");
    Eigen::SelfAdjointEigenSolver<Plain> eig(a);
    if (eig.info() != Eigen::Success) throw DomainError("hermitian_function: eigendecomposition failed");
    const auto& lambda = eig.eigenvalues();
    Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, 1> values(lambda.size());
    for (Index k = 0; k < lambda.size(); ++k) values(k) = f(lambda(k) + phase);
    const auto& u = eig.eigenvectors();
    return u * values.asDiagonal() * u.adjoint();
}

template <typename A, typename B>
typename A::PlainObject commutator(const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b)
{
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw SizeError("commutator: dimension mismatch");
    return a * b - b * a;
}

template <typename A, typename B>
typename A::PlainObject anticommutator(const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b)
{
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw SizeError("anticommutator: dimension mismatch");
    return a * b + b * a;
}

} // namespace squid
