#include "doctest.h"

#include <cmath>

#include "squid/observables.hpp"
#include "squid/steady_state.hpp"
#include "squid/sweep.hpp"

using namespace squid;

namespace {

DerivedScales paper(double cutoff = 10.0) { return sweep_scales(SquidParams{}, 1e-3, cutoff); }

// Harmonic circuit: same scales with the Josephson term switched off.
DerivedScales harmonic(double cutoff = std::numeric_limits<double>::infinity())
{
    auto s = paper(cutoff);
    s.nu_ratio = 0.0;
    return s;
}

Operator ground_projector(Index n)
{
    Operator p = Operator::Zero(n, n);
    p(0, 0) = 1.0;
    return p;
}

double max_abs(const Operator& a) { return a.cwiseAbs().maxCoeff(); }

} // namespace

TEST_CASE("amplitude damping relaxes to the vacuum")
{
    GeneratorOptions opts;
    opts.include_squeeze = false;
    const Index n = 10;
    const auto g = assemble_liouvillian(build_lindblad_first(harmonic(), 0.05, 0.0, n, opts));
    const auto ss = steady_state(g);
    CHECK(max_abs(ss.rho - ground_projector(n)) < 1e-10);
    CHECK(purity(ss.rho) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(ss.residual_norm < 1e-12);
    // Eigenvalues are -gamma (m + n) - i (m - n). The mode of smallest modulus
    // is the population decay 2 gamma; the slowest coherences sit at |lambda| ~ 1,
    // outside the shift-invert window, so the gap estimate lies between the
    // true slowest rate gamma and 2 gamma.
    CHECK(ss.smallest_rate == doctest::Approx(0.1).epsilon(1e-6));
    CHECK(ss.spectral_gap >= 0.05 - 1e-9);
    CHECK(ss.spectral_gap <= 0.1 + 1e-9);
    CHECK_FALSE(ss.used_eigen_fallback);
}

TEST_CASE("steady state matches long-time evolution")
{
    const Index n = 8;
    const auto g = assemble_liouvillian(build_lindblad_first(harmonic(4.0), 0.3, 0.0, n));
    const auto ss = steady_state(g);
    const Operator rho_t = evolve_to(g, ground_projector(n), 25.0 / ss.spectral_gap);
    CHECK(trace_distance(rho_t, ss.rho) < 1e-6);
    CHECK(ss.min_eigenvalue > -1e-10);
    CHECK(std::abs(ss.rho.trace() - 1.0) < 1e-14);
    CHECK(max_abs(ss.rho - ss.rho.adjoint()) == 0.0);
}

TEST_CASE("Arnoldi gap agrees with the full spectrum")
{
    const Index n = 7;
    const auto g = assemble_liouvillian(build_lindblad_first(paper(), 0.05, 0.3, n));
    const auto ev = liouvillian_spectrum(g);
    double gap = std::numeric_limits<double>::infinity();
    for (Index k = 0; k < ev.size(); ++k)
        if (std::abs(ev(k)) > 1e-9) gap = std::min(gap, std::abs(ev(k).real()));
    const auto ss = steady_state(g);
    CHECK(ss.spectral_gap == doctest::Approx(gap).epsilon(1e-6));
}

TEST_CASE("paper circuit steady state is physical")
{
    const Index n = 24;
    for (double flux : {0.1, 0.3}) {
        const auto ss = steady_state(assemble_liouvillian(build_lindblad_first(paper(), 1e-2, flux, n)));
        CHECK(ss.residual_norm < 1e-10);
        CHECK(ss.min_eigenvalue > -1e-8);
        CHECK(ss.spectral_gap > 1e-8);
        CHECK(purity(ss.rho) <= 1.0 + 1e-12);
    }
}

TEST_CASE("zero damping has no unique steady state")
{
    const auto g = build_cl_first(paper(), 0.0, 0.2, 6);
    CHECK_THROWS_AS(steady_state(g), NonUniqueSteadyState);
    try {
        steady_state(g);
    } catch (const NonUniqueSteadyState& e) {
        CHECK(e.gap() <= 1e-8);
    }
}

TEST_CASE("time evolution")
{
    const Index n = 6;
    SUBCASE("zero generator keeps the state")
    {
        const Superoperator zero{SuperMatrix::Zero(n * n, n * n), GeneratorKind::custom};
        const auto traj = evolve(zero, ground_projector(n), 1.0, 0.1, 1);
        CHECK(traj.states.size() == 11);
        for (const auto& s : traj.states) CHECK(max_abs(s - ground_projector(n)) == 0.0);
    }
    SUBCASE("unitary dynamics conserves purity")
    {
        const auto g = build_cl_first(paper(), 0.0, 0.2, n);
        Operator psi = Operator::Zero(n, n);
        psi(0, 0) = psi(1, 1) = psi(0, 1) = psi(1, 0) = 0.5;
        const auto traj = evolve(g, psi, 2.0, 0.0, 50);
        for (const auto& s : traj.states) CHECK(purity(s) == doctest::Approx(1.0).epsilon(1e-8));
        CHECK(max_abs(traj.states.back() - psi) > 1e-3);
    }
    SUBCASE("oversized steps are rejected")
    {
        const auto g = build_cl_first(paper(), 0.1, 0.2, n);
        const double limit = 0.1 / superoperator_norm(g);
        CHECK_THROWS_AS(evolve(g, ground_projector(n), 1.0, 2.0 * limit), ParameterError);
        CHECK_NOTHROW(evolve_to(g, ground_projector(n), 0.1, 0.5 * limit));
        try {
            evolve(g, ground_projector(n), 1.0, 2.0 * limit);
        } catch (const ParameterError& e) {
            CHECK(e.field() == "dt");
        }
    }
}

TEST_CASE("basis convergence scan")
{
    GeneratorOptions opts;
    opts.include_squeeze = false;
    const auto table = convergence_scan(
        [&](Index n) { return assemble_liouvillian(build_lindblad_first(harmonic(), 0.05, 0.0, n, opts)); },
        {6, 8, 10});
    REQUIRE(table.rows.size() == 3);
    CHECK(table.converged);
    CHECK(table.monotone);
    for (const auto& r : table.rows) CHECK(r.purity == doctest::Approx(1.0).epsilon(1e-10));

    const auto squid_table = convergence_scan(
        [](Index n) { return assemble_liouvillian(build_lindblad_first(paper(), 1e-2, 0.3, n)); }, {20, 28, 36});
    MESSAGE("purity at N = 36: " << squid_table.rows.back().purity << ", last change "
                                 << squid_table.rows.back().delta_purity);
    CHECK(squid_table.converged);
}
