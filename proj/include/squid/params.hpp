// params.hpp — Physical constants, circuit/bath parameters and dimensionless scales

#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace squid {

// CODATA 2018 (exact SI values for hbar and e).
inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kHbar = 1.054571817e-34;          // J s
inline constexpr double kElectronCharge = 1.602176634e-19; // C

struct PhysicalConstants {
    double hbar{kHbar};
    double electron_charge{kElectronCharge};
    double flux_quantum{kPi * kHbar / kElectronCharge}; // h / 2e

    static PhysicalConstants codata() { return {}; }
};

// Raised for non-physical inputs. field() names the offending parameter.
class ParameterError : public std::invalid_argument {
public:
    ParameterError(std::string field, const std::string& what)
        : std::invalid_argument(field + ": " + what), field_(std::move(field)) {}
    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

struct SquidParams {
    double capacitance{5e-15};          // F
    double inductance{3e-10};           // H
    double josephson_energy{9.99e-22};  // J (hbar * nu)
    double flux_fraction{0.0};          // Phi_x / Phi_0

    static SquidParams paper_defaults() { return {}; }
};

struct BathParams {
    double damping_rate{0.0};     // gamma, rad/s
    double cutoff_frequency{0.0}; // Omega, rad/s; +inf means no cutoff (xi = 0)
    double temperature{0.0};      // K, only 0 is supported
};

// Dimensionless quantities consumed by every operator builder. Energies are
// measured in hbar*omega0 and times in 1/omega0.
struct DerivedScales {
    double omega0{1.0};           // 1/sqrt(LC), rad/s
    double xi{0.0};               // omega0 / Omega
    double beta{1.0};             // 2 pi L I_c / Phi_0
    double nu_ratio{0.0};         // nu / omega0
    double critical_current{0.0}; // 2 pi hbar nu / Phi_0, A
    double gamma_ratio{0.0};      // gamma / omega0

    // Coefficient c in cos(c X + 2 pi phi_x): sqrt(beta omega0 / nu).
    double phase_coupling() const;
    // Weight of the sin operator in the second-order flux series: sqrt(beta nu / omega0).
    double sin_weight() const;
};

DerivedScales derive_scales(const SquidParams& squid, const BathParams& bath,
                            const PhysicalConstants& constants = PhysicalConstants::codata());

// Flux per unit of the dimensionless X operator, sqrt(hbar / (C omega0)), in Wb.
double flux_unit(const SquidParams& squid, const PhysicalConstants& constants = PhysicalConstants::codata());

struct SimulationConfig {
    long basis_size{40};
    long flux_points{101};
    double flux_min{0.0};
    double flux_max{1.0};
};

enum class Severity { warning, error };

struct Violation {
    Severity severity;
    std::string key;
    std::string message;
};

struct ValidationReport {
    std::vector<Violation> violations;

    bool ok() const; // true when no error-severity entries
    bool empty() const { return violations.empty(); }
};

ValidationReport validate_params(const SquidParams& squid, const BathParams& bath,
                                 const SimulationConfig& sim);

} // namespace squid
