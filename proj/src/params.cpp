#include "squid/params.hpp"

#include <cmath>
#include <limits>

namespace squid {

double DerivedScales::phase_coupling() const
{
    return nu_ratio > 0.0 ? std::sqrt(beta / nu_ratio) : 0.0;
}

double DerivedScales::sin_weight() const { return std::sqrt(beta * nu_ratio); }

namespace {

void require_positive(double value, const char* field)
{
    if (!(value > 0.0) || !std::isfinite(value))
        throw ParameterError(field, "must be finite and strictly positive (got " + std::to_string(value) + ")");
}

} // namespace

DerivedScales derive_scales(const SquidParams& squid, const BathParams& bath,
                            const PhysicalConstants& constants)
{
    require_positive(squid.capacitance, "capacitance");
    require_positive(squid.inductance, "inductance");
    require_positive(squid.josephson_energy, "josephson_energy");
    if (!(bath.cutoff_frequency > 0.0))
        throw ParameterError("cutoff_frequency", "must be strictly positive");
    if (!(bath.damping_rate >= 0.0) || !std::isfinite(bath.damping_rate))
        throw ParameterError("damping_rate", "must be finite and non-negative");
    if (!std::isfinite(squid.flux_fraction))
        throw ParameterError("flux_fraction", "must be finite");

    DerivedScales s;
    s.omega0 = 1.0 / std::sqrt(squid.inductance * squid.capacitance);
    s.xi = std::isinf(bath.cutoff_frequency) ? 0.0 : s.omega0 / bath.cutoff_frequency;
    const double nu = squid.josephson_energy / constants.hbar;
    s.nu_ratio = nu / s.omega0;
    s.critical_current = 2.0 * kPi * squid.josephson_energy / constants.flux_quantum;
    s.beta = 2.0 * kPi * squid.inductance * s.critical_current / constants.flux_quantum;
    s.gamma_ratio = bath.damping_rate / s.omega0;
    return s;
}

double flux_unit(const SquidParams& squid, const PhysicalConstants& constants)
{
    const double omega0 = 1.0 / std::sqrt(squid.inductance * squid.capacitance);
    return std::sqrt(constants.hbar / (squid.capacitance * omega0));
}

bool ValidationReport::ok() const
{
    for (const auto& v : violations)
        if (v.severity == Severity::error) return false;
    return true;
}

ValidationReport validate_params(const SquidParams& squid, const BathParams& bath,
                                 const SimulationConfig& sim)
{
    ValidationReport report;
    auto error = [&](std::string key, std::string msg) {
        report.violations.push_back({Severity::error, std::move(key), std::move(msg)});
    };
    auto warn = [&](std::string key, std::string msg) {
        report.violations.push_back({Severity::warning, std::move(key), std::move(msg)});
    };

    if (!(squid.capacitance > 0.0) || !std::isfinite(squid.capacitance))
        error("capacitance_F", "must be finite and strictly positive");
    if (!(squid.inductance > 0.0) || !std::isfinite(squid.inductance))
        error("inductance_H", "must be finite and strictly positive");
    if (!(squid.josephson_energy > 0.0) || !std::isfinite(squid.josephson_energy))
        error("josephson_energy_J", "must be finite and strictly positive");
    if (!std::isfinite(squid.flux_fraction)) error("flux_fraction", "must be finite");

    if (!(bath.cutoff_frequency > 0.0)) error("cutoff_over_omega0", "must be strictly positive");
    if (!(bath.damping_rate >= 0.0) || !std::isfinite(bath.damping_rate))
        error("gamma_rad_s", "must be finite and non-negative");
    else if (bath.damping_rate == 0.0)
        warn("gamma_rad_s", "gamma = 0: Liouvillian kernel degenerate; steady state not unique");
    if (bath.temperature != 0.0) error("temperature_K", "only T=0 supported");

    if (report.ok()) {
        const auto scales = derive_scales(squid, bath);
        if (scales.xi >= 1.0)
            warn("cutoff_over_omega0", "xi >= 1: second-order Lindblad operators are undefined");
        if (scales.gamma_ratio > 1.0)
            warn("gamma_rad_s", "gamma > omega0: overdamped, frequency shift formula invalid");
    }

    if (sim.basis_size < 2) error("basis_size", "must be at least 2");
    if (sim.flux_points < 1) error("flux_points", "flux grid must be non-empty");
    if (!std::isfinite(sim.flux_min) || !std::isfinite(sim.flux_max) || sim.flux_max < sim.flux_min)
        error("flux_max", "flux range must be finite with flux_max >= flux_min");
    return report;
}

} // namespace squid
