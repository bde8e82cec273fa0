#include "squid/observables.hpp"

namespace squid {

namespace {

void require_unit_trace(const Operator& rho, const char* where)
{
    if (rho.rows() != rho.cols()) throw SizeError(std::string(where) + ": density matrix is not square");
    const double deviation = std::abs(rho.trace() - 1.0);
    if (!(deviation <= 1e-8))
        throw DomainError(std::string(where) + ": trace deviates from 1 by " + std::to_string(deviation));
}

} // namespace

double purity(const Operator& rho)
{
    require_unit_trace(rho, "purity");
    // Tr(rho rho) = sum_ij rho_ij rho_ji, without forming the product.
    return (rho.array() * rho.transpose().array()).sum().real();
}

cd expectation(const Operator& rho, const Operator& a)
{
    if (rho.rows() != a.rows() || rho.cols() != a.cols()) throw SizeError("expectation: dimension mismatch");
    return (rho.array() * a.transpose().array()).sum();
}

double screening_current(const Operator& rho, const SquidParams& squid, const PhysicalConstants& constants)
{
    const auto q = build_xp(rho.rows());
    return flux_unit(squid, constants) * expectation(rho, q.x).real() / squid.inductance;
}

double trace_distance(const Operator& a, const Operator& b)
{
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw SizeError("trace_distance: dimension mismatch");
    const Operator d = a - b;
    const Operator h = 0.5 * (d + d.adjoint());
    Eigen::SelfAdjointEigenSolver<Operator> eig(h, Eigen::EigenvaluesOnly);
    return 0.5 * eig.eigenvalues().cwiseAbs().sum();
}

double min_eigenvalue(const Operator& rho)
{
    const Operator h = 0.5 * (rho + rho.adjoint());
    return Eigen::SelfAdjointEigenSolver<Operator>(h, Eigen::EigenvaluesOnly).eigenvalues()(0);
}

} // namespace squid
