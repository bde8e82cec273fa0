#include "squid/steady_state.hpp"

#include <cstdio>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace squid {

namespace {

// Trace-preservation makes the rows of G indexed by diagonal entries linearly
// dependent, so row 0 (the (0,0) entry) is replaced by Tr(rho) = 1.
SuperMatrix bordered_system(const SuperMatrix& g, Index n)
{
    SuperMatrix a = g;
    a.row(0).setZero();
    for (Index k = 0; k < n; ++k) a(0, k + n * k) = 1.0;
    return a;
}

Eigen::VectorXcd project_traceless(Eigen::VectorXcd v, Index n)
{
    cd tr = 0.0;
    for (Index k = 0; k < n; ++k) tr += v(k + n * k);
    tr /= static_cast<double>(n);
    for (Index k = 0; k < n; ++k) v(k + n * k) -= tr;
    return v;
}

struct GapEstimate {
    double gap{std::numeric_limits<double>::infinity()};
    double smallest_rate{std::numeric_limits<double>::infinity()};
};

// Shift-invert Arnoldi at zero on the traceless subspace, which G leaves
// invariant. A solve against the bordered LU with the trace row zeroed is an
// application of G^{-1} there.
GapEstimate arnoldi_gap(const Eigen::PartialPivLU<SuperMatrix>& lu, Index n, int dimension)
{
    const Index size = n * n;
    const Index m = std::min<Index>(dimension, size - 1);
    Eigen::MatrixXcd v = Eigen::MatrixXcd::Zero(size, m + 1);
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(m + 1, m);

    std::mt19937_64 rng(0x5157u);
    std::normal_distribution<double> normal;
    Eigen::VectorXcd start(size);
    for (Index k = 0; k < size; ++k) start(k) = cd(normal(rng), normal(rng));
    start = project_traceless(start, n);
    v.col(0) = start / start.norm();

    Index built = m;
    for (Index j = 0; j < m; ++j) {
        Eigen::VectorXcd w = v.col(j);
        w(0) = 0.0;
        w = project_traceless(lu.solve(w), n);
        for (int pass = 0; pass < 2; ++pass)
            for (Index i = 0; i <= j; ++i) {
                const cd c = v.col(i).dot(w);
                h(i, j) += c;
                w -= c * v.col(i);
            }
        h(j + 1, j) = w.norm();
        if (std::abs(h(j + 1, j)) < 1e-13 * h.col(j).norm()) {
            built = j + 1;
            break;
        }
        v.col(j + 1) = w / h(j + 1, j).real();
    }

    const Eigen::MatrixXcd hm = h.topLeftCorner(built, built);
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> eig(hm);
    const double tail = built < m || built == size - 1 ? 0.0 : std::abs(h(built, built - 1));

    GapEstimate out;
    double dominant = 0.0;
    Index dominant_k = 0;
    for (Index k = 0; k < built; ++k)
        if (std::abs(eig.eigenvalues()(k)) > dominant) {
            dominant = std::abs(eig.eigenvalues()(k));
            dominant_k = k;
        }
    for (Index k = 0; k < built; ++k) {
        const cd mu = eig.eigenvalues()(k);
        // Ritz residual |h_{m+1,m} e_m^T y| for a unit eigenvector y.
        const double ritz_residual = tail * std::abs(eig.eigenvectors()(built - 1, k));
        const bool converged = ritz_residual <= 1e-6 * std::abs(mu);
        if (!converged && k != dominant_k) continue;
        if (std::abs(mu) == 0.0) continue;
        const cd lambda = 1.0 / mu;
        out.gap = std::min(out.gap, std::abs(lambda.real()));
        out.smallest_rate = std::min(out.smallest_rate, std::abs(lambda));
    }
    return out;
}

struct EigenSolution {
    Eigen::VectorXcd null_vector;
    GapEstimate gap;
};

EigenSolution eigen_null_vector(const SuperMatrix& g)
{
    Eigen::ComplexEigenSolver<SuperMatrix> eig(g);
    if (eig.info() != Eigen::Success) throw DomainError("steady_state: eigen-solve failed");
    const auto& values = eig.eigenvalues();
    Index best = 0;
    for (Index k = 1; k < values.size(); ++k)
        if (std::abs(values(k)) < std::abs(values(best))) best = k;
    EigenSolution out;
    out.null_vector = eig.eigenvectors().col(best);
    for (Index k = 0; k < values.size(); ++k) {
        if (k == best) continue;
        out.gap.gap = std::min(out.gap.gap, std::abs(values(k).real()));
        out.gap.smallest_rate = std::min(out.gap.smallest_rate, std::abs(values(k)));
    }
    return out;
}

} // namespace

double superoperator_norm(const Superoperator& g) { return g.matrix.cwiseAbs().colwise().sum().maxCoeff(); }

Eigen::VectorXcd liouvillian_spectrum(const Superoperator& g)
{
    Eigen::ComplexEigenSolver<SuperMatrix> eig(g.matrix, false);
    if (eig.info() != Eigen::Success) throw DomainError("liouvillian_spectrum: eigen-solve failed");
    return eig.eigenvalues();
}

SteadyStateResult steady_state(const Superoperator& g, const SteadyStateOptions& options)
{
    const Index size = g.matrix.rows();
    if (size == 0 || g.matrix.cols() != size) throw SizeError("steady_state: generator is not square");
    const Index n = g.basis_size();
    if (n * n != size) throw SizeError("steady_state: generator dimension is not N^2");

    SteadyStateResult result;
    Eigen::PartialPivLU<SuperMatrix> lu(bordered_system(g.matrix, n));
    const double rcond = lu.rcond();
    result.condition_estimate = rcond > 0.0 ? 1.0 / rcond : std::numeric_limits<double>::infinity();

    Eigen::VectorXcd x;
    GapEstimate gap;
    if (!(rcond > 0.0) || result.condition_estimate > options.condition_limit || !std::isfinite(rcond)) {
        result.used_eigen_fallback = true;
        auto sol = eigen_null_vector(g.matrix);
        x = std::move(sol.null_vector);
        gap = sol.gap;
        cd tr = 0.0;
        for (Index k = 0; k < n; ++k) tr += x(k + n * k);
        if (std::abs(tr) < 1e-300) throw NonUniqueSteadyState("steady_state: null vector has zero trace", gap.gap);
        x /= tr;
    } else {
        Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(size);
        rhs(0) = 1.0;
        x = lu.solve(rhs);
        gap = arnoldi_gap(lu, n, options.arnoldi_dimension);
    }

    result.spectral_gap = gap.gap;
    result.smallest_rate = gap.smallest_rate;
    if (!(gap.gap > options.gap_threshold))
    {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.3e", gap.gap);
        throw NonUniqueSteadyState("steady_state: Liouvillian has a (near-)degenerate kernel, spectral gap " +
                                       std::string(buf) + " <= " + std::to_string(options.gap_threshold),
                                   gap.gap);
    }

    Operator rho = unvectorize(x, n);
    result.hermiticity_deviation = max_asymmetry(rho);
    rho = 0.5 * (rho + rho.adjoint()).eval();
    const cd tr = rho.trace();
    result.trace_deviation = std::abs(tr - 1.0);
    rho /= tr.real();

    const double gnorm = g.matrix.norm();
    result.residual_norm = (g.matrix * vectorize(rho)).norm() / (gnorm > 0.0 ? gnorm : 1.0);
    result.min_eigenvalue = Eigen::SelfAdjointEigenSolver<Operator>(rho, Eigen::EigenvaluesOnly).eigenvalues()(0);
    result.rho = std::move(rho);
    return result;
}

namespace {

double checked_step(const Superoperator& g, double t_final, double dt)
{
    if (!(t_final >= 0.0) || !std::isfinite(t_final)) throw ParameterError("t_final", "must be finite and >= 0");
    const double norm = superoperator_norm(g);
    if (dt <= 0.0) dt = norm > 0.0 ? 0.01 / norm : t_final;
    if (!(dt * norm <= 0.1)) throw ParameterError("dt", "RK4 step too large: dt |G| = " + std::to_string(dt * norm) +
                                                            " exceeds 0.1");
    return dt;
}

void rk4_step(const SuperMatrix& g, Eigen::VectorXcd& y, double dt)
{
    const Eigen::VectorXcd k1 = g * y;
    const Eigen::VectorXcd k2 = g * (y + 0.5 * dt * k1);
    const Eigen::VectorXcd k3 = g * (y + 0.5 * dt * k2);
    const Eigen::VectorXcd k4 = g * (y + dt * k3);
    y += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

} // namespace

Trajectory evolve(const Superoperator& g, const Operator& rho0, double t_final, double dt, long record_every)
{
    const Index n = rho0.rows();
    if (n * n != g.matrix.rows()) throw SizeError("evolve: state and generator dimensions differ");
    dt = checked_step(g, t_final, dt);
    const long steps = t_final > 0.0 ? static_cast<long>(std::ceil(t_final / dt)) : 0;
    if (steps > 0) dt = t_final / static_cast<double>(steps);

    Trajectory out;
    Eigen::VectorXcd y = vectorize(rho0);
    out.times.push_back(0.0);
    out.states.push_back(rho0);
    for (long s = 1; s <= steps; ++s) {
        rk4_step(g.matrix, y, dt);
        if (s == steps || (record_every > 0 && s % record_every == 0)) {
            out.times.push_back(s * dt);
            out.states.push_back(unvectorize(y, n));
        }
    }
    return out;
}

Operator evolve_to(const Superoperator& g, const Operator& rho0, double t_final, double dt)
{
    const Index n = rho0.rows();
    if (n * n != g.matrix.rows()) throw SizeError("evolve_to: state and generator dimensions differ");
    dt = checked_step(g, t_final, dt);
    const long steps = t_final > 0.0 ? static_cast<long>(std::ceil(t_final / dt)) : 0;
    if (steps > 0) dt = t_final / static_cast<double>(steps);
    Eigen::VectorXcd y = vectorize(rho0);
    for (long s = 0; s < steps; ++s) rk4_step(g.matrix, y, dt);
    return unvectorize(y, n);
}

ConvergenceTable convergence_scan(const std::function<Superoperator(Index)>& build, const std::vector<Index>& sizes,
                                  double tolerance)
{
    ConvergenceTable table;
    for (const Index n : sizes) {
        const auto ss = steady_state(build(n));
        const auto q = build_xp(n);
        ConvergenceRow row;
        row.n = n;
        row.purity = (ss.rho * ss.rho).trace().real();
        row.mean_x = (ss.rho * q.x).trace().real();
        if (!table.rows.empty()) {
            row.delta_purity = row.purity - table.rows.back().purity;
            row.delta_mean_x = row.mean_x - table.rows.back().mean_x;
        }
        table.rows.push_back(row);
    }
    for (std::size_t k = 2; k < table.rows.size(); ++k)
        if (std::abs(table.rows[k].delta_purity) > std::abs(table.rows[k - 1].delta_purity) + 1e-12)
            table.monotone = false;
    table.converged = table.rows.size() >= 2 && std::abs(table.rows.back().delta_purity) <= tolerance;
    return table;
}

} // namespace squid
