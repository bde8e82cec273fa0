#include "squid/bath_kernels.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/ooura_fourier_integrals.hpp>

#include "squid/operators.hpp"

namespace squid {

KernelParams KernelParams::from(const SquidParams& squid, const BathParams& bath,
                                const PhysicalConstants& constants)
{
    const auto scales = derive_scales(squid, bath, constants);
    return {bath.damping_rate, bath.cutoff_frequency, squid.capacitance, scales.omega0, constants.hbar};
}

double spectral_density(double omega, const KernelParams& k)
{
    if (omega < 0.0) throw DomainError("spectral_density: omega must be non-negative");
    const double o2 = k.cutoff * k.cutoff;
    return (2.0 * k.capacitance * k.gamma / kPi) * omega * o2 / (o2 + omega * omega);
}

double dissipation_kernel(double tau, const KernelParams& k)
{
    const double sgn = (tau > 0.0) - (tau < 0.0);
    return 2.0 * k.capacitance * k.gamma * k.hbar * k.cutoff * k.cutoff * std::exp(-k.cutoff * std::abs(tau)) * sgn;
}

double noise_kernel_t0(double tau, const KernelParams& k)
{
    return k.capacitance * k.hbar * k.gamma * k.cutoff * k.omega0 * std::exp(-k.cutoff * std::abs(tau));
}

// Both integrals are taken in u = omega / Omega so the integrand is O(1);
// Ooura's double-exponential Fourier rules handle the slowly decaying
// oscillatory tail without a hard frequency cutoff.
double dissipation_kernel_quadrature(double tau, const KernelParams& k)
{
    if (tau == 0.0) return 0.0;
    static thread_local boost::math::quadrature::ooura_fourier_sin<double> integrator(1e-12);
    const double w = k.cutoff * std::abs(tau);
    auto f = [](double u) { return u / (1.0 + u * u); };
    const double integral = integrator.integrate(f, w).first;
    const double prefactor = 2.0 * k.hbar * (2.0 * k.capacitance * k.gamma / kPi) * k.cutoff * k.cutoff;
    return std::copysign(prefactor * integral, tau);
}

double noise_kernel_t0_quadrature(double tau, const KernelParams& k)
{
    static thread_local boost::math::quadrature::ooura_fourier_cos<double> integrator(1e-12);
    const double w = k.cutoff * std::abs(tau);
    auto f = [](double u) { return 1.0 / (1.0 + u * u); };
    double integral = 0.0;
    if (w == 0.0)
        integral = kPi / 2.0;
    else
        integral = integrator.integrate(f, w).first;
    constexpr double coth_zero_temperature = 1.0;
    const double prefactor = 2.0 * k.hbar * (k.omega0 / 2.0) * coth_zero_temperature *
                             (2.0 * k.capacitance * k.gamma / kPi) * k.cutoff;
    return prefactor * integral;
}

MomentCheck moment_identity_check(int n, double cutoff)
{
    if (n < 0 || n > 6) throw std::invalid_argument("moment_identity_check: n must lie in [0, 6]");
    if (!(cutoff > 0.0)) throw std::invalid_argument("moment_identity_check: cutoff must be positive");
    double factorial = 1.0;
    for (int k = 2; k <= n; ++k) factorial *= k;

    boost::math::quadrature::exp_sinh<double> integrator;
    // Evaluated as exp(n log tau - Omega tau) so the far tail underflows to 0
    // instead of forming inf * 0.
    auto f = [n, cutoff](double tau) {
        if (tau <= 0.0) return n == 0 ? 1.0 : 0.0;
        return std::exp(n * std::log(tau) - cutoff * tau);
    };
    const double value = integrator.integrate(f, 0.0, std::numeric_limits<double>::infinity(), 1e-13);
    return {factorial, std::pow(cutoff, n + 1) * value};
}

} // namespace squid
