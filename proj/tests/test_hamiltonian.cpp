#include "doctest.h"

#include <limits>
#include <random>

#include "squid/hamiltonian.hpp"
#include "squid/master_equation.hpp"
#include "squid/sweep.hpp"

using namespace squid;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

DerivedScales paper(double gamma = 1e-3, double cutoff = 10.0) { return sweep_scales(SquidParams{}, gamma, cutoff); }

double max_abs(const Operator& a) { return a.cwiseAbs().maxCoeff(); }

Eigen::VectorXd spectrum(const Operator& h) { return Eigen::SelfAdjointEigenSolver<Operator>(h).eigenvalues(); }

Operator random_state(Index n, unsigned seed)
{
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal;
    Operator a(n, n);
    for (Index i = 0; i < n; ++i)
        for (Index j = 0; j < n; ++j) a(i, j) = cd(normal(rng), normal(rng));
    Operator rho = a * a.adjoint();
    return rho / rho.trace();
}

} // namespace

TEST_CASE("lambda values")
{
    CHECK(lambda_first_order(0.0, 10.0, 1.0) == 0.0);
    CHECK(lambda_first_order(0.05, 10.0, 1.0) == doctest::Approx(0.5).epsilon(1e-14)); // 2 Omega gamma / omega0^2 = 1
    CHECK(lambda_first_order(1e-3, 10.0, 1.0) == doctest::Approx(0.02 / 1.02).epsilon(1e-12));
    CHECK(lambda_second_order(1e-3, 10.0, 1.0) == doctest::Approx(0.0198 / 1.0198).epsilon(1e-12));
    CHECK(lambda_second_order(0.0, 10.0, 1.0) == 0.0);
    // Large cutoff: the two orders differ by O(omega0^2/Omega^2) in x.
    const double x1 = 2.0 * 1e-5 * 1e3, x2 = x1 * (1.0 - 1e-6);
    CHECK(lambda_second_order(1e-5, 1e3, 1.0) == doctest::Approx(x2 / (1.0 + x2)).epsilon(1e-12));
    CHECK(std::abs(lambda_second_order(1e-5, 1e3, 1.0) - lambda_first_order(1e-5, 1e3, 1.0)) < 1e-7);
    CHECK(lambda_first_order(1e-3, kInf, 1.0) == 1.0);
    CHECK_THROWS_AS(lambda_first_order(-1.0, 10.0, 1.0), ParameterError);
}

TEST_CASE("renormalized Hamiltonian rejects lambda >= 1")
{
    HamiltonianConfig hc;
    hc.renormalization = Renormalization::first;
    CHECK_THROWS_AS(build_system_hamiltonian(paper(1e-3, kInf), hc, 8), ParameterError);
    CHECK_NOTHROW(build_system_hamiltonian(paper(1e-3, 10.0), hc, 8));
}

TEST_CASE("absorption identity for the inductance shift")
{
    // The Caldeira-Leggett term i (gamma/xi) [X^2, .] is a Hamiltonian change
    // -1/2 x X^2 with x = 2 gamma / xi. lambda evaluated at the shifted
    // circuit frequency omega0 sqrt(1 - x) must equal x.
    const double gamma = 1e-3, cutoff = 10.0;
    const double x = 2.0 * gamma * cutoff;
    const double lambda = lambda_first_order(gamma, cutoff, std::sqrt(1.0 - x));
    CHECK(lambda == doctest::Approx(x).epsilon(1e-12));

    auto scales = paper(gamma, cutoff);
    const Index n = 10;
    const auto q = build_xp(n);
    HamiltonianConfig bare;
    bare.flux_fraction = 0.2;
    const Operator h0 = build_system_hamiltonian(scales, bare, n);
    const Operator h_lambda = h0 - 0.5 * lambda * (q.x * q.x);
    const Operator x2 = q.x * q.x;
    for (unsigned seed : {1u, 2u, 3u}) {
        const Operator rho = random_state(n, seed);
        const Operator cl_term = cd(0.0, gamma * cutoff) * commutator(x2, rho);
        const Operator hamiltonian_difference = cd(0.0, -1.0) * commutator(Operator(h_lambda - h0), rho);
        CHECK((cl_term - hamiltonian_difference).cwiseAbs().maxCoeff() < 1e-10);
    }
}

TEST_CASE("Bogoliubov shift")
{
    CHECK(bogoliubov_shift(2.0, 0.0) == 2.0);
    CHECK(bogoliubov_shift(1.0, 0.6) == doctest::Approx(0.8).epsilon(1e-14));
    CHECK(bogoliubov_shift(1.0, 1.0) == 0.0);
    CHECK_THROWS_AS(bogoliubov_shift(1.0, 1.2), DomainError);
}

TEST_CASE("squeezing term")
{
    const Index n = 9;
    CHECK(squeeze_term(0.0, n).norm() == 0.0);
    const auto l = build_ladder(n);
    const double g = 0.03;
    const Operator expected = cd(0.0, g / 2.0) * (l.a_dagger * l.a_dagger - l.a * l.a);
    CHECK((squeeze_term(g, n) - expected).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(std::abs(squeeze_term(g, n).trace()) < 1e-14);
}

TEST_CASE("sin operator and second-order Hamiltonian term")
{
    const auto s = paper();
    const Index n = 16;
    const auto q = build_xp(n);
    SUBCASE("phi_x = 1/4 shifts the phase by pi/2")
    {
        const Operator expected =
            hermitian_function(Operator(s.phase_coupling() * q.x), [](double t) { return std::cos(t); });
        CHECK((sin_operator(s, 0.25, n) - expected).cwiseAbs().maxCoeff() < 1e-12);
    }
    SUBCASE("coefficient vanishes as nu -> 0 at fixed beta")
    {
        DerivedScales small = s;
        small.nu_ratio = 1e-12;
        CHECK(sin_term_coefficient(small, SinTermCoefficient::printed) < 1e-5);
        CHECK(sin_term_coefficient(s, SinTermCoefficient::consistent) ==
              doctest::Approx(s.gamma_ratio * sin_term_coefficient(s, SinTermCoefficient::printed)));
    }
    SUBCASE("parity signature at phi_x = 0 and Hermiticity")
    {
        const Operator t = second_order_sin_hamiltonian_term(s, 0.0, n);
        const Operator pi = parity_operator(n);
        CHECK((pi * t * pi - t).cwiseAbs().maxCoeff() < 1e-12 * t.cwiseAbs().maxCoeff()); // even
        CHECK(max_asymmetry(second_order_sin_hamiltonian_term(s, 0.3, n)) < 1e-12);
    }
}

TEST_CASE("system Hamiltonian spectra")
{
    const auto s = paper();
    const Index n = 40;
    HamiltonianConfig hc;
    SUBCASE("harmonic limit")
    {
        DerivedScales harmonic = s;
        harmonic.nu_ratio = 0.0;
        const auto ev = spectrum(build_system_hamiltonian(harmonic, hc, n));
        for (Index k = 0; k < n / 2; ++k) CHECK(ev(k) == doctest::Approx(k + 0.5).epsilon(1e-8));
    }
    SUBCASE("real, bounded below, flux periodic and flux-reversal symmetric")
    {
        hc.flux_fraction = 0.37;
        const Operator h = build_system_hamiltonian(s, hc, n);
        CHECK(max_asymmetry(h) < 1e-12);
        const auto ev = spectrum(h);
        CHECK(ev(0) > -s.nu_ratio - 1.0);
        hc.flux_fraction = 1.37;
        CHECK((spectrum(build_system_hamiltonian(s, hc, n)) - ev).cwiseAbs().maxCoeff() < 1e-10);
        hc.flux_fraction = -0.37;
        CHECK((spectrum(build_system_hamiltonian(s, hc, n)) - ev).cwiseAbs().maxCoeff() < 1e-10);
    }
    SUBCASE("double well at half flux")
    {
        hc.flux_fraction = 0.5;
        const Operator h = build_system_hamiltonian(s, hc, n);
        const Operator pi = parity_operator(n);
        CHECK(max_abs(Operator(pi * h * pi - h)) < 1e-12);
        // The lowest doublet is nearly degenerate, so only its span is well
        // defined; <X> summed over the doublet vanishes by symmetry.
        Eigen::SelfAdjointEigenSolver<Operator> eig(h);
        const auto doublet = eig.eigenvectors().leftCols(2);
        const auto q = build_xp(n);
        CHECK(std::abs((doublet.adjoint() * q.x * doublet).trace()) < 1e-8);

        // Tunnel splitting well below hbar omega0, stable between N = 40 and 60.
        const double split40 = eig.eigenvalues()(1) - eig.eigenvalues()(0);
        const auto ev60 = spectrum(build_system_hamiltonian(s, hc, 60));
        MESSAGE("tunnel splitting at half flux: " << split40 << " hbar omega0");
        CHECK(split40 < 1e-2);
        CHECK(std::abs((ev60(1) - ev60(0)) - split40) < 1e-6);
    }
    SUBCASE("squeeze and sin terms keep H Hermitian")
    {
        hc.include_squeeze = true;
        hc.include_second_order_sin_term = true;
        hc.flux_fraction = 0.2;
        CHECK(max_asymmetry(build_system_hamiltonian(s, hc, n)) < 1e-12);
    }
}
