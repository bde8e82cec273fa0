#include "doctest.h"

#include <cmath>

#include "squid/bath_kernels.hpp"

using namespace squid;

namespace {

KernelParams unit_kernel(double gamma = 1.0, double cutoff = 1.0)
{
    KernelParams k;
    k.gamma = gamma;
    k.cutoff = cutoff;
    k.capacitance = 1.0;
    k.omega0 = 1.0;
    k.hbar = 1.0;
    return k;
}

} // namespace

TEST_CASE("kernel closed forms at unit parameters")
{
    const auto k = unit_kernel();
    CHECK(dissipation_kernel(1.0, k) == doctest::Approx(2.0 * std::exp(-1.0)).epsilon(1e-14));
    CHECK(dissipation_kernel(-1.0, k) == doctest::Approx(-2.0 * std::exp(-1.0)).epsilon(1e-14));
    CHECK(dissipation_kernel(0.0, k) == 0.0);
    CHECK(noise_kernel_t0(0.0, k) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(noise_kernel_t0(2.0, k) == doctest::Approx(std::exp(-2.0)).epsilon(1e-14));
    CHECK(spectral_density(1.0, k) == doctest::Approx(1.0 / kPi).epsilon(1e-14));
    CHECK(spectral_density(0.0, k) == 0.0);
}

TEST_CASE("kernel symmetry and linearity in gamma")
{
    const auto k = unit_kernel(0.3, 2.5);
    auto k2 = k;
    k2.gamma *= 2.0;
    for (double tau : {0.01, 0.4, 1.7, 6.0}) {
        CHECK(dissipation_kernel(-tau, k) == doctest::Approx(-dissipation_kernel(tau, k)).epsilon(1e-15));
        CHECK(noise_kernel_t0(-tau, k) == doctest::Approx(noise_kernel_t0(tau, k)).epsilon(1e-15));
        CHECK(dissipation_kernel(tau, k2) == doctest::Approx(2.0 * dissipation_kernel(tau, k)).epsilon(1e-14));
        CHECK(noise_kernel_t0(tau, k2) == doctest::Approx(2.0 * noise_kernel_t0(tau, k)).epsilon(1e-14));
    }
    CHECK(dissipation_kernel(1.0, unit_kernel(0.0, 2.0)) == 0.0);
}

TEST_CASE("frequency integrals reproduce the closed forms")
{
    for (double cutoff : {1.0, 10.0}) {
        const auto k = unit_kernel(0.7, cutoff);
        for (double omega_tau : {0.1, 0.5, 1.0, 2.0, 5.0}) {
            const double tau = omega_tau / cutoff;
            const double d = dissipation_kernel(tau, k);
            const double n = noise_kernel_t0(tau, k);
            CHECK(std::abs(dissipation_kernel_quadrature(tau, k) - d) <= 1e-6 * std::abs(d));
            CHECK(std::abs(noise_kernel_t0_quadrature(tau, k) - n) <= 1e-6 * std::abs(n));
        }
    }
}

TEST_CASE("kernels from SI parameters")
{
    SquidParams s;
    BathParams b;
    b.damping_rate = 1e9;
    b.cutoff_frequency = 1e13;
    const auto k = KernelParams::from(s, b);
    CHECK(k.omega0 == doctest::Approx(1.0 / std::sqrt(s.inductance * s.capacitance)).epsilon(1e-14));
    const double tau = 0.3 / b.cutoff_frequency;
    CHECK(dissipation_kernel(tau, k) ==
          doctest::Approx(2.0 * s.capacitance * 1e9 * kHbar * 1e26 * std::exp(-0.3)).epsilon(1e-12));
    CHECK(std::abs(dissipation_kernel_quadrature(tau, k) / dissipation_kernel(tau, k) - 1.0) < 1e-6);
}

TEST_CASE("moment identity")
{
    double factorial = 1.0;
    for (int n = 0; n <= 4; ++n) {
        if (n > 0) factorial *= n;
        for (double cutoff : {0.5, 1.0, 20.0}) {
            const auto m = moment_identity_check(n, cutoff);
            CHECK(m.analytic == doctest::Approx(factorial).epsilon(1e-15));
            CHECK(std::abs(m.quadrature - m.analytic) <= 1e-10 * m.analytic);
        }
    }
}
