// verification.hpp — Oracle suite behind `squidsim verify`
//
// Each oracle recomputes a quantity by an independent route (quadrature, exact
// matrix exponentials, time evolution, least-squares fits) and compares it to
// the production path under a stated tolerance.

#pragma once

#include <functional>
#include <string>
#include <vector>

#include "squid/master_equation.hpp"

namespace squid {

struct VerifyOptions {
    Index basis_size{12};
    bool flip_p_sign{false}; // fault injection for the first-order Lindblad operator
};

struct OracleOutcome {
    bool passed{false};
    double value{0.0};     // the measured error, slope or residual
    std::string criterion; // human-readable tolerance
    std::string detail;
};

struct Oracle {
    std::string name;
    std::string description;
    std::function<OracleOutcome(const VerifyOptions&)> run;
};

const std::vector<Oracle>& oracle_suite();

struct OracleReport {
    std::string name;
    OracleOutcome outcome;
};

std::vector<OracleReport> run_oracles(const VerifyOptions& options, const std::vector<std::string>& only = {});

// Least-squares slope of log ||exact X(-tau) - sum_{k<=order} A_k tau^k|| against
// log tau over `points` log-spaced tau in [tau_lo, tau_hi].
double bch_truncation_slope(int order, const Operator& h, const Operator& x, double tau_lo, double tau_hi,
                            int points = 7);

// Worst relative error of the closed-form kernels against quadrature over
// the given Omega*tau values.
struct KernelErrors {
    double dissipation{0.0};
    double noise{0.0};
};
KernelErrors kernel_quadrature_errors(const std::vector<double>& omega_tau);

// Worst relative error of the moment identity for n = 0..max_n.
double moment_identity_error(int max_n, double cutoff);

} // namespace squid
