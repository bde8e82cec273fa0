#include "squid/bch.hpp"

#include <string>

#include "squid/hamiltonian.hpp"

namespace squid {

Operator bch_coefficient(int n, const Operator& h, const Operator& x)
{
    if (n < 0 || n > kMaxBchOrder)
        throw std::invalid_argument("bch_coefficient: unsupported order " + std::to_string(n) +
                                    " (0.." + std::to_string(kMaxBchOrder) + ")");
    if (h.rows() != x.rows() || h.cols() != x.cols()) throw SizeError("bch_coefficient: dimension mismatch");
    const Operator generator = cd(0.0, -1.0) * h;
    Operator term = x;
    double factorial = 1.0;
    for (int k = 1; k <= n; ++k) {
        term = commutator(generator, term);
        factorial *= k;
    }
    term /= factorial;
    return 0.5 * (term + term.adjoint());
}

Operator taylor_flux_series(int order, double tau, const Operator& h, const Operator& x)
{
    Operator sum = Operator::Zero(x.rows(), x.cols());
    double power = 1.0;
    for (int k = 0; k <= order; ++k) {
        sum += power * bch_coefficient(k, h, x);
        power *= tau;
    }
    return sum;
}

Operator truncated_flux_series(int order, const DerivedScales& scales, double flux_fraction, Index n)
{
    if (order != 1 && order != 2)
        throw std::invalid_argument("truncated_flux_series: order must be 1 or 2 (got " + std::to_string(order) + ")");
    const auto q = build_xp(n);
    Operator series = q.x - scales.xi * q.p;
    if (order == 2) {
        const double xi2 = scales.xi * scales.xi;
        series -= xi2 * (q.x + scales.sin_weight() * sin_operator(scales, flux_fraction, n));
    }
    return series;
}

Operator weighted_bch_sum(int order, double xi, const Operator& h, const Operator& x)
{
    Operator sum = Operator::Zero(x.rows(), x.cols());
    double weight = 1.0;
    for (int k = 0; k <= order; ++k) {
        sum += weight * bch_coefficient(k, h, x);
        weight *= (k + 1) * xi;
    }
    return sum;
}

Operator heisenberg_flux_exact(double tau, const Operator& h, const Operator& x)
{
    if (!is_hermitian(h, 1e-10)) throw DomainError("heisenberg_flux_exact: Hamiltonian is not Hermitian");
    Eigen::SelfAdjointEigenSolver<Operator> eig(h);
    const auto& u = eig.eigenvectors();
    Eigen::VectorXcd phases(h.rows());
    for (Index k = 0; k < h.rows(); ++k) phases(k) = std::exp(cd(0.0, -eig.eigenvalues()(k) * tau));
    const Operator evolution = u * phases.asDiagonal() * u.adjoint(); // exp(-i H tau)
    return evolution * x * evolution.adjoint();
}

} // namespace squid
