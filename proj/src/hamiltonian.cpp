#include "squid/hamiltonian.hpp"

#include <cmath>
#include <string>

namespace squid {

namespace {

double shift_ratio(double x) { return x / (1.0 + x); }

void check_rates(double gamma, double cutoff, double omega0)
{
    if (!(omega0 > 0.0)) throw ParameterError("omega0", "must be strictly positive");
    if (!(cutoff > 0.0)) throw ParameterError("cutoff_frequency", "must be strictly positive");
    if (!(gamma >= 0.0)) throw ParameterError("damping_rate", "must be non-negative");
}

} // namespace

// lambda = x/(1+x) with x = 2 Omega gamma / omega0^2.
double lambda_first_order(double gamma, double cutoff, double omega0)
{
    check_rates(gamma, cutoff, omega0);
    if (gamma == 0.0) return 0.0;
    if (std::isinf(cutoff)) return 1.0;
    return shift_ratio(2.0 * cutoff * gamma / (omega0 * omega0));
}

// Same with x scaled by (1 - omega0^2/Omega^2).
double lambda_second_order(double gamma, double cutoff, double omega0)
{
    check_rates(gamma, cutoff, omega0);
    if (gamma == 0.0) return 0.0;
    if (std::isinf(cutoff)) return 1.0;
    const double r = omega0 / cutoff;
    return shift_ratio(2.0 * gamma * cutoff * (1.0 - r * r) / (omega0 * omega0));
}

double renormalization_lambda(Renormalization order, const DerivedScales& scales)
{
    const double cutoff = scales.xi > 0.0 ? 1.0 / scales.xi : INFINITY;
    switch (order) {
    case Renormalization::none: return 0.0;
    case Renormalization::first: return lambda_first_order(scales.gamma_ratio, cutoff, 1.0);
    case Renormalization::second: return lambda_second_order(scales.gamma_ratio, cutoff, 1.0);
    }
    return 0.0;
}

double bogoliubov_shift(double omega, double gamma)
{
    if (!(gamma >= 0.0)) throw DomainError("bogoliubov_shift: gamma must be non-negative");
    if (gamma > omega)
        throw DomainError("bogoliubov_shift: gamma > omega (overdamped) is outside the formula's validity");
    if (gamma == omega) return 0.0;
    return omega * std::sqrt(1.0 - (gamma * gamma) / (omega * omega));
}

Operator squeeze_term(double gamma_ratio, Index n)
{
    const auto q = build_xp(n);
    return (0.5 * gamma_ratio) * anticommutator(q.x, q.p);
}

Operator sin_operator(const DerivedScales& scales, double flux_fraction, Index n)
{
    const auto q = build_xp(n);
    const Operator cx = scales.phase_coupling() * q.x;
    return hermitian_function(cx, [](double t) { return std::sin(t); }, 2.0 * kPi * flux_fraction);
}

double sin_term_coefficient(const DerivedScales& scales, SinTermCoefficient which)
{
    const double printed = scales.xi * scales.sin_weight();
    return which == SinTermCoefficient::printed ? printed : scales.gamma_ratio * printed;
}

Operator second_order_sin_hamiltonian_term(const DerivedScales& scales, double flux_fraction, Index n,
                                           SinTermCoefficient which)
{
    const auto q = build_xp(n);
    const Operator s = sin_operator(scales, flux_fraction, n);
    return (0.5 * sin_term_coefficient(scales, which)) * anticommutator(q.x, s);
}

Operator build_system_hamiltonian(const DerivedScales& scales, const HamiltonianConfig& config, Index n)
{
    const double lambda = renormalization_lambda(config.renormalization, scales);
    if (lambda >= 1.0)
        throw ParameterError("renormalization",
                             "renormalization exceeds bare inductance (lambda = " + std::to_string(lambda) + ")");

    const auto q = build_xp(n);
    Operator h = oscillator_hamiltonian(n);
    if (lambda != 0.0) h -= (0.5 * lambda) * (q.x * q.x);

    if (scales.nu_ratio > 0.0) {
        const Operator cx = scales.phase_coupling() * q.x;
        h -= scales.nu_ratio *
             hermitian_function(cx, [](double t) { return std::cos(t); }, 2.0 * kPi * config.flux_fraction);
    }
    if (config.include_squeeze) h += squeeze_term(scales.gamma_ratio, n);
    if (config.include_second_order_sin_term)
        h += second_order_sin_hamiltonian_term(scales, config.flux_fraction, n, config.sin_coefficient);

    return 0.5 * (h + h.adjoint());
}

} // namespace squid
