// observables.hpp — Density-matrix observables in SI or dimensionless units

#pragma once

#include "squid/operators.hpp"
#include "squid/params.hpp"

namespace squid {

// Tr rho^2. DomainError when |Tr rho - 1| > 1e-8.
double purity(const Operator& rho);

// Tr(rho A).
cd expectation(const Operator& rho, const Operator& a);

// <Phi>/L in amperes, Phi = flux_unit * X in the translated basis.
double screening_current(const Operator& rho, const SquidParams& squid,
                         const PhysicalConstants& constants = PhysicalConstants::codata());

// (1/2) sum |eig(a - b)| for Hermitian a, b.
double trace_distance(const Operator& a, const Operator& b);

double min_eigenvalue(const Operator& rho);

} // namespace squid
