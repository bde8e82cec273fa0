// bch.hpp — Baker-Campbell-Hausdorff expansion of the Heisenberg flux operator
//
// X(-tau) = exp(-i H tau) X exp(i H tau) = sum_n A_n tau^n,
// A_n = (1/n!) [-iH, [-iH, ... [-iH, X]]]   (n nested commutators)
// with H in hbar*omega0 units and tau in 1/omega0.

#pragma once

#include "squid/operators.hpp"
#include "squid/params.hpp"

namespace squid {

inline constexpr int kMaxBchOrder = 4;

Operator bch_coefficient(int n, const Operator& h, const Operator& x);

// sum_{k<=order} A_k tau^k.
Operator taylor_flux_series(int order, double tau, const Operator& h, const Operator& x);

// sum_n n! xi^n A_n truncated at order 1 or 2, in closed form:
//   order 1: X - xi P
//   order 2: X - xi P - xi^2 (X + sqrt(beta nu/omega0) sin(c X + 2 pi phi_x))
Operator truncated_flux_series(int order, const DerivedScales& scales, double flux_fraction, Index n);

// The same sum assembled from bch_coefficient for a given Hamiltonian.
Operator weighted_bch_sum(int order, double xi, const Operator& h, const Operator& x);

Operator heisenberg_flux_exact(double tau, const Operator& h, const Operator& x);

} // namespace squid
