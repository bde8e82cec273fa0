// bath_kernels.hpp — Ohmic bath with Lorentz-Drude cutoff: closed forms and quadrature checks

#pragma once

#include "squid/params.hpp"

namespace squid {

struct KernelParams {
    double gamma{0.0};       // rad/s
    double cutoff{1.0};      // Omega, rad/s
    double capacitance{1.0}; // F
    double omega0{1.0};      // rad/s
    double hbar{kHbar};

    static KernelParams from(const SquidParams& squid, const BathParams& bath,
                             const PhysicalConstants& constants = PhysicalConstants::codata());
};

// J(omega) = (2 C gamma / pi) omega Omega^2 / (Omega^2 + omega^2).
double spectral_density(double omega, const KernelParams& k);

// D(-tau) = 2 C gamma hbar Omega^2 exp(-Omega |tau|) sgn(tau).
double dissipation_kernel(double tau, const KernelParams& k);

// T -> 0 noise kernel D1(-tau) = C hbar gamma Omega omega0 exp(-Omega |tau|).
double noise_kernel_t0(double tau, const KernelParams& k);

// Quadrature evaluations of the frequency-integral definitions. These exist
// to check the closed forms above and are never used to build generators.
//   D(-tau)  = 2 hbar int_0^inf J(w) sin(w tau) dw
//   D1(-tau) = 2 hbar (omega0/2) coth(hbar omega0 / 2 k_B T) int_0^inf J(w)/w cos(w tau) dw, coth -> 1
double dissipation_kernel_quadrature(double tau, const KernelParams& k);
double noise_kernel_t0_quadrature(double tau, const KernelParams& k);

struct MomentCheck {
    double analytic;   // n!
    double quadrature; // Omega^{n+1} int_0^inf tau^n exp(-Omega tau) dtau
};

MomentCheck moment_identity_check(int n, double cutoff);

} // namespace squid
