#include "doctest.h"

#include <cmath>

#include "squid/bch.hpp"
#include "squid/hamiltonian.hpp"
#include "squid/sweep.hpp"

using namespace squid;

namespace {

DerivedScales paper(double cutoff = 10.0) { return sweep_scales(SquidParams{}, 1e-3, cutoff); }

Operator hamiltonian(const DerivedScales& s, double flux, Index n)
{
    HamiltonianConfig hc;
    hc.flux_fraction = flux;
    return build_system_hamiltonian(s, hc, n);
}

double block_error(const Operator& a, const Operator& b, Index block)
{
    return (a - b).topLeftCorner(block, block).cwiseAbs().maxCoeff();
}

double fitted_slope(const std::vector<double>& taus, const std::vector<double>& errors)
{
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double m = static_cast<double>(taus.size());
    for (std::size_t k = 0; k < taus.size(); ++k) {
        const double x = std::log(taus[k]), y = std::log(errors[k]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

} // namespace

TEST_CASE("leading coefficients")
{
    const auto s = paper();
    const Index n = 60;
    const auto q = build_xp(n);
    for (double flux : {0.0, 0.13, 0.5}) {
        const Operator h = hamiltonian(s, flux, n);
        CHECK((bch_coefficient(0, h, q.x) - q.x).cwiseAbs().maxCoeff() == 0.0);
        // The cos potential commutes with X, so A1 = -P holds for every flux.
        CHECK((bch_coefficient(1, h, q.x) + q.p).cwiseAbs().maxCoeff() < 1e-10);
        // A2 = -V'(X)/2 = -(X + sqrt(beta nu) sin(cX + 2 pi phi))/2 away from the basis edge.
        const Operator expected = -0.5 * (q.x + s.sin_weight() * sin_operator(s, flux, n));
        CHECK(block_error(bch_coefficient(2, h, q.x), expected, 20) < 1e-8);
    }
    CHECK_THROWS_AS(bch_coefficient(5, hamiltonian(s, 0.0, 6), build_xp(6).x), std::invalid_argument);
    CHECK_THROWS_AS(bch_coefficient(-1, hamiltonian(s, 0.0, 6), build_xp(6).x), std::invalid_argument);
}

TEST_CASE("closed-form truncated series")
{
    const Index n = 60;
    const auto q = build_xp(n);
    SUBCASE("infinite cutoff leaves X")
    {
        const auto s = paper(std::numeric_limits<double>::infinity());
        CHECK((truncated_flux_series(2, s, 0.3, n) - q.x).cwiseAbs().maxCoeff() == 0.0);
    }
    SUBCASE("agrees with the commutator sum")
    {
        const auto s = paper(10.0);
        const Operator h = hamiltonian(s, 0.3, n);
        for (int order : {1, 2})
            CHECK(block_error(truncated_flux_series(order, s, 0.3, n), weighted_bch_sum(order, s.xi, h, q.x), 20) <
                  1e-9);
    }
    SUBCASE("second-order correction scales as xi^2")
    {
        const auto s1 = paper(10.0), s2 = paper(20.0);
        const double d1 = (truncated_flux_series(2, s1, 0.2, n) - truncated_flux_series(1, s1, 0.2, n)).norm();
        const double d2 = (truncated_flux_series(2, s2, 0.2, n) - truncated_flux_series(1, s2, 0.2, n)).norm();
        CHECK(d1 / d2 == doctest::Approx(4.0).epsilon(1e-12));
    }
    CHECK_THROWS_AS(truncated_flux_series(3, paper(), 0.0, 8), std::invalid_argument);
}

TEST_CASE("harmonic Heisenberg flux rotates exactly")
{
    const Index n = 12;
    const auto q = build_xp(n);
    const Operator h = oscillator_hamiltonian(n);
    for (double tau : {0.0, 0.3, 1.9}) {
        const Operator expected = std::cos(tau) * q.x - std::sin(tau) * q.p;
        CHECK((heisenberg_flux_exact(tau, h, q.x) - expected).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("Taylor truncation error slopes")
{
    const auto s = paper();
    const Index n = 14;
    const auto q = build_xp(n);
    const Operator h = hamiltonian(s, 0.2, n);
    std::vector<double> taus;
    for (int k = 0; k < 7; ++k) taus.push_back(1e-3 * std::pow(10.0, k / 6.0));
    for (int order : {1, 2}) {
        std::vector<double> errors;
        for (double tau : taus)
            errors.push_back((heisenberg_flux_exact(tau, h, q.x) - taylor_flux_series(order, tau, h, q.x)).norm());
        const double slope = fitted_slope(taus, errors);
        MESSAGE("order " << order << " slope " << slope);
        CHECK(std::abs(slope - (order + 1)) <= 0.1);
    }
}
