// sweep.hpp — zeta optimization and flux/cutoff sweeps

#pragma once

#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "squid/master_equation.hpp"
#include "squid/steady_state.hpp"

namespace squid {

struct MinimizeResult {
    double x{0.0};
    double value{0.0};
    int evaluations{0};
};

// Golden-section search on [a, b] until the bracket is narrower than tolerance.
MinimizeResult golden_section_minimize(const std::function<double(double)>& f, double a, double b,
                                       double tolerance);

struct ZetaOptimum {
    double zeta_star{0.0};
    double delta_min{0.0};
    bool multimodal{false}; // the coarse grid has more than one local minimum
    std::vector<double> grid_zeta;
    std::vector<double> grid_value;
    int evaluations{0};
};

// Minimizes objective(zeta) over (0, 1): coarse interior grid zeta_k = k/(points+1),
// then golden-section refinement inside the bracket of the best grid point.
ZetaOptimum minimize_over_zeta(const std::function<double(double)>& objective, int grid_points = 21,
                               double tolerance = 1e-4);

// |purity_first - purity_second(zeta)| for the Lindblad generators at one flux point.
ZetaOptimum zeta_optimize(const DerivedScales& scales, double gamma, double flux_fraction, Index n,
                          const GeneratorOptions& options = {}, int grid_points = 21, double tolerance = 1e-4);

enum class GeneratorFamily { lindblad, caldeira_leggett };
enum class ZetaMode { fixed, one_minus_xi, optimize };

std::string to_string(GeneratorFamily family);
std::string to_string(ZetaMode mode);

struct SweepConfig {
    SquidParams squid;
    double gamma_ratio{1e-3}; // gamma / omega0
    std::vector<double> cutoff_ratios{std::numeric_limits<double>::infinity()}; // Omega / omega0
    double flux_min{0.0};
    double flux_max{1.0};
    long flux_points{101};
    Index basis_size{40};
    bool first_order{true};
    bool second_order{true};
    GeneratorFamily family{GeneratorFamily::lindblad};
    ZetaMode zeta_mode{ZetaMode::one_minus_xi};
    double zeta{0.5}; // used by ZetaMode::fixed
    int zeta_grid_points{21};
    double zeta_tolerance{1e-4};
    GeneratorOptions generator;
    SteadyStateOptions solver;
    unsigned workers{0}; // 0: hardware concurrency

    std::vector<double> flux_grid() const;
};

inline constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct SweepRecord {
    double flux_fraction{kNaN};
    double xi{kNaN};
    double cutoff_ratio{kNaN};
    double purity_first{kNaN};
    double purity_second{kNaN};
    double current_first{kNaN};  // A
    double current_second{kNaN}; // A
    double zeta_star{kNaN};
    double delta_min{kNaN};
    bool zeta_multimodal{false};
    double residual_first{kNaN};
    double residual_second{kNaN};
    double gap_first{kNaN};
    double gap_second{kNaN};
    double min_eigenvalue_first{kNaN};
    double min_eigenvalue_second{kNaN};
    Index n{0};
    std::string error; // empty on success

    bool ok() const { return error.empty(); }
};

// One (cutoff, flux) point.
SweepRecord sweep_point(const SweepConfig& config, double cutoff_ratio, double flux_fraction);

// Records ordered by cutoff (outer) then flux (inner), independent of the
// worker count. Point failures are recorded in SweepRecord::error.
std::vector<SweepRecord> flux_sweep(const SweepConfig& config,
                                    const std::function<void(std::size_t, std::size_t)>& progress = {});

// Scales for the sweep's circuit with gamma and Omega given in omega0.
DerivedScales sweep_scales(const SquidParams& squid, double gamma_ratio, double cutoff_ratio);

} // namespace squid
