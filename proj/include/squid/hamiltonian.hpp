// hamiltonian.hpp — SQUID Hamiltonian in the translated (external flux) basis
//
// H = P^2/2 + (1 - lambda) X^2/2 - (nu/omega0) cos(c X + 2 pi phi_x)
// in units of hbar*omega0, with optional squeezing and second-order sin terms.

#pragma once

#include "squid/operators.hpp"
#include "squid/params.hpp"

namespace squid {

enum class Renormalization { none, first, second };

// Which prefactor multiplies the symmetrized X sin(.) Hamiltonian term.
//   printed:    sqrt(beta xi nu / Omega) = xi sqrt(beta nu/omega0)
//   consistent: (gamma/omega0) xi sqrt(beta nu/omega0), the value that makes the
//               two-Lindblad generator reproduce the second-order Caldeira-Leggett
//               generator up to double-commutator additions.
enum class SinTermCoefficient { printed, consistent };

struct HamiltonianConfig {
    double flux_fraction{0.0};
    Renormalization renormalization{Renormalization::none};
    bool include_squeeze{false};
    bool include_second_order_sin_term{false};
    SinTermCoefficient sin_coefficient{SinTermCoefficient::consistent};
};

double lambda_first_order(double gamma, double cutoff, double omega0);
double lambda_second_order(double gamma, double cutoff, double omega0);

// lambda in dimensionless form (gamma and Omega measured in omega0).
double renormalization_lambda(Renormalization order, const DerivedScales& scales);

// omega * sqrt(1 - gamma^2/omega^2); DomainError when gamma > omega.
double bogoliubov_shift(double omega, double gamma);

// (gamma/2)(XP + PX) in hbar*omega0 units, gamma given as gamma/omega0.
Operator squeeze_term(double gamma_ratio, Index n);

// sin(c X + 2 pi phi_x).
Operator sin_operator(const DerivedScales& scales, double flux_fraction, Index n);

double sin_term_coefficient(const DerivedScales& scales, SinTermCoefficient which);

// coefficient * (X S + S X)/2 with S = sin_operator.
Operator second_order_sin_hamiltonian_term(const DerivedScales& scales, double flux_fraction, Index n,
                                           SinTermCoefficient which = SinTermCoefficient::printed);

Operator build_system_hamiltonian(const DerivedScales& scales, const HamiltonianConfig& config, Index n);

} // namespace squid
