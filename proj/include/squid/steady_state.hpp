// steady_state.hpp — Null-space steady states, spectral gap estimates and an RK4 oracle

#pragma once

#include <functional>
#include <stdexcept>
#include <vector>

#include "squid/master_equation.hpp"

namespace squid {

class NonUniqueSteadyState : public std::runtime_error {
public:
    NonUniqueSteadyState(const std::string& what, double gap) : std::runtime_error(what), gap_(gap) {}
    double gap() const noexcept { return gap_; }

private:
    double gap_;
};

struct SteadyStateOptions {
    double gap_threshold{1e-8};
    double condition_limit{1e12}; // fall back to an eigen-solve above this
    int arnoldi_dimension{30};
};

struct SteadyStateResult {
    Operator rho;
    double residual_norm{0.0};        // |G vec(rho)| / |G|_F after correction
    double spectral_gap{0.0};         // smallest |Re lambda| over the non-zero eigenvalues nearest 0
    double smallest_rate{0.0};        // smallest |lambda| over the same set
    double min_eigenvalue{0.0};
    double trace_deviation{0.0};      // |Tr rho - 1| before renormalization
    double hermiticity_deviation{0.0}; // max |rho - rho^dag| before symmetrization
    double condition_estimate{0.0};   // 1 / rcond of the bordered system
    bool used_eigen_fallback{false};
};

SteadyStateResult steady_state(const Superoperator& g, const SteadyStateOptions& options = {});

// Induced 1-norm of the superoperator matrix.
double superoperator_norm(const Superoperator& g);

// Full spectrum (dense eigen-solve). Intended for small N and diagnostics.
Eigen::VectorXcd liouvillian_spectrum(const Superoperator& g);

struct Trajectory {
    std::vector<double> times;
    std::vector<Operator> states;
};

// Classical fixed-step RK4 on vec(rho). dt <= 0 selects 0.01 / |G|.
// Throws ParameterError("dt") unless dt |G| <= 0.1. States are recorded every
// record_every steps plus the final one.
Trajectory evolve(const Superoperator& g, const Operator& rho0, double t_final, double dt = 0.0,
                  long record_every = 0);

// Final state only, without storing the trajectory.
Operator evolve_to(const Superoperator& g, const Operator& rho0, double t_final, double dt = 0.0);

struct ConvergenceRow {
    Index n{0};
    double purity{0.0};
    double mean_x{0.0};
    double delta_purity{0.0}; // versus the previous row (0 for the first)
    double delta_mean_x{0.0};
};

struct ConvergenceTable {
    std::vector<ConvergenceRow> rows;
    bool converged{false}; // |delta purity| <= tolerance at the largest N
    bool monotone{true};   // |delta purity| shrinks down the table
};

// build(n) returns the generator at basis size n.
ConvergenceTable convergence_scan(const std::function<Superoperator(Index)>& build, const std::vector<Index>& sizes,
                                  double tolerance = 1e-4);

} // namespace squid
