#include "squid/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <thread>

#include "squid/observables.hpp"

namespace squid {

MinimizeResult golden_section_minimize(const std::function<double(double)>& f, double a, double b, double tolerance)
{
    if (!(a < b)) throw std::invalid_argument("golden_section_minimize: empty bracket");
    if (!(tolerance > 0.0)) throw std::invalid_argument("golden_section_minimize: tolerance must be positive");
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c);
    double fd = f(d);
    int evaluations = 2;
    while (b - a > tolerance) {
        if (fc <= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
        ++evaluations;
    }
    return fc <= fd ? MinimizeResult{c, fc, evaluations} : MinimizeResult{d, fd, evaluations};
}

ZetaOptimum minimize_over_zeta(const std::function<double(double)>& objective, int grid_points, double tolerance)
{
    if (grid_points < 3) throw std::invalid_argument("minimize_over_zeta: need at least 3 grid points");
    ZetaOptimum out;
    const double spacing = 1.0 / (grid_points + 1);
    for (int k = 1; k <= grid_points; ++k) {
        out.grid_zeta.push_back(k * spacing);
        out.grid_value.push_back(objective(k * spacing));
    }
    out.evaluations = grid_points;

    const auto& v = out.grid_value;
    const std::size_t last = v.size() - 1;
    std::size_t best = 0;
    int local_minima = 0;
    for (std::size_t k = 0; k <= last; ++k) {
        if (v[k] < v[best]) best = k;
        const bool left = k == 0 || v[k] < v[k - 1];
        const bool right = k == last || v[k] < v[k + 1];
        if (left && right) ++local_minima;
    }
    out.multimodal = local_minima > 1;

    // Endpoints stay strictly inside (0, 1): the split degenerates there.
    const double lo = best == 0 ? 0.25 * spacing : out.grid_zeta[best - 1];
    const double hi = best == last ? 1.0 - 0.25 * spacing : out.grid_zeta[best + 1];
    const auto refined = golden_section_minimize(objective, lo, hi, tolerance);
    out.evaluations += refined.evaluations;
    if (refined.value <= v[best]) {
        out.zeta_star = refined.x;
        out.delta_min = refined.value;
    } else {
        out.zeta_star = out.grid_zeta[best];
        out.delta_min = v[best];
    }
    return out;
}

namespace {

double lindblad_second_purity(const DerivedScales& scales, double gamma, double flux, double zeta, Index n,
                              const GeneratorOptions& options, const SteadyStateOptions& solver)
{
    const auto spec = build_lindblad_second(scales, gamma, flux, ZetaSplit::from_zeta(zeta), n, options);
    return purity(steady_state(assemble_liouvillian(spec, GeneratorKind::lindblad_second), solver).rho);
}

ZetaOptimum optimize_against(double purity_first, const DerivedScales& scales, double gamma, double flux, Index n,
                             const GeneratorOptions& options, const SteadyStateOptions& solver, int grid_points,
                             double tolerance)
{
    return minimize_over_zeta(
        [&](double zeta) {
            return std::abs(purity_first - lindblad_second_purity(scales, gamma, flux, zeta, n, options, solver));
        },
        grid_points, tolerance);
}

} // namespace

ZetaOptimum zeta_optimize(const DerivedScales& scales, double gamma, double flux_fraction, Index n,
                          const GeneratorOptions& options, int grid_points, double tolerance)
{
    const SteadyStateOptions solver;
    const auto first = assemble_liouvillian(build_lindblad_first(scales, gamma, flux_fraction, n, options),
                                            GeneratorKind::lindblad_first);
    const double p1 = purity(steady_state(first, solver).rho);
    return optimize_against(p1, scales, gamma, flux_fraction, n, options, solver, grid_points, tolerance);
}

std::string to_string(GeneratorFamily family)
{
    return family == GeneratorFamily::lindblad ? "lindblad" : "caldeira_leggett";
}

std::string to_string(ZetaMode mode)
{
    switch (mode) {
    case ZetaMode::fixed: return "fixed";
    case ZetaMode::one_minus_xi: return "one_minus_xi";
    case ZetaMode::optimize: return "optimize";
    }
    return "unknown";
}

std::vector<double> SweepConfig::flux_grid() const
{
    if (flux_points < 1) throw ParameterError("flux_points", "must be at least 1");
    std::vector<double> grid;
    grid.reserve(static_cast<std::size_t>(flux_points));
    if (flux_points == 1) return {flux_min};
    for (long k = 0; k < flux_points; ++k)
        grid.push_back(flux_min + (flux_max - flux_min) * static_cast<double>(k) / static_cast<double>(flux_points - 1));
    return grid;
}

DerivedScales sweep_scales(const SquidParams& squid, double gamma_ratio, double cutoff_ratio)
{
    if (!(cutoff_ratio > 0.0)) throw ParameterError("cutoff_over_omega0", "must be strictly positive");
    const double omega0 = 1.0 / std::sqrt(squid.inductance * squid.capacitance);
    BathParams bath;
    bath.damping_rate = gamma_ratio * omega0;
    bath.cutoff_frequency = cutoff_ratio * omega0;
    return derive_scales(squid, bath);
}

SweepRecord sweep_point(const SweepConfig& config, double cutoff_ratio, double flux_fraction)
{
    SweepRecord rec;
    rec.flux_fraction = flux_fraction;
    rec.cutoff_ratio = cutoff_ratio;
    rec.n = config.basis_size;
    try {
        const auto scales = sweep_scales(config.squid, config.gamma_ratio, cutoff_ratio);
        rec.xi = scales.xi;
        const double gamma = config.gamma_ratio;
        const Index n = config.basis_size;
        const bool lindblad = config.family == GeneratorFamily::lindblad;

        const bool need_first = config.first_order ||
                                (config.second_order && lindblad && config.zeta_mode == ZetaMode::optimize);
        if (need_first) {
            const auto g = lindblad ? assemble_liouvillian(build_lindblad_first(scales, gamma, flux_fraction, n,
                                                                                config.generator),
                                                           GeneratorKind::lindblad_first)
                                    : build_cl_first(scales, gamma, flux_fraction, n, config.generator);
            const auto ss = steady_state(g, config.solver);
            rec.purity_first = purity(ss.rho);
            rec.current_first = screening_current(ss.rho, config.squid);
            rec.residual_first = ss.residual_norm;
            rec.gap_first = ss.spectral_gap;
            rec.min_eigenvalue_first = ss.min_eigenvalue;
        }

        if (config.second_order) {
            Superoperator g;
            if (lindblad) {
                if (!(scales.xi < 1.0))
                    throw ParameterError("xi", "second-order Lindblad operators require xi < 1 (Omega > omega0)");
                double zeta = 0.0;
                switch (config.zeta_mode) {
                case ZetaMode::fixed: zeta = config.zeta; break;
                case ZetaMode::one_minus_xi: zeta = ZetaSplit::one_minus_xi(scales.xi).zeta(); break;
                case ZetaMode::optimize: {
                    const auto opt = optimize_against(rec.purity_first, scales, gamma, flux_fraction, n,
                                                      config.generator, config.solver, config.zeta_grid_points,
                                                      config.zeta_tolerance);
                    zeta = opt.zeta_star;
                    rec.delta_min = opt.delta_min;
                    rec.zeta_multimodal = opt.multimodal;
                    break;
                }
                }
                rec.zeta_star = zeta;
                g = assemble_liouvillian(build_lindblad_second(scales, gamma, flux_fraction, ZetaSplit::from_zeta(zeta),
                                                               n, config.generator),
                                         GeneratorKind::lindblad_second);
            } else {
                g = build_cl_second(scales, gamma, flux_fraction, n, config.generator);
            }
            const auto ss = steady_state(g, config.solver);
            rec.purity_second = purity(ss.rho);
            rec.current_second = screening_current(ss.rho, config.squid);
            rec.residual_second = ss.residual_norm;
            rec.gap_second = ss.spectral_gap;
            rec.min_eigenvalue_second = ss.min_eigenvalue;
            if (config.zeta_mode != ZetaMode::optimize && config.first_order && lindblad)
                rec.delta_min = std::abs(rec.purity_first - rec.purity_second);
        }
    } catch (const std::exception& e) {
        rec.error = e.what();
    }
    return rec;
}

std::vector<SweepRecord> flux_sweep(const SweepConfig& config,
                                    const std::function<void(std::size_t, std::size_t)>& progress)
{
    if (config.cutoff_ratios.empty()) throw ParameterError("cutoff_over_omega0", "at least one cutoff is required");
    const auto grid = config.flux_grid();
    struct Task {
        double cutoff;
        double flux;
    };
    std::vector<Task> tasks;
    for (const double cutoff : config.cutoff_ratios)
        for (const double flux : grid) tasks.push_back({cutoff, flux});

    std::vector<SweepRecord> records(tasks.size());
    unsigned workers = config.workers ? config.workers : std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, tasks.size()));

    std::atomic<std::size_t> next{0};
    std::atomic<std::size_t> done{0};
    std::mutex progress_mutex;
    auto work = [&] {
        for (std::size_t k = next++; k < tasks.size(); k = next++) {
            records[k] = sweep_point(config, tasks[k].cutoff, tasks[k].flux);
            const std::size_t finished = ++done;
            if (progress) {
                std::lock_guard<std::mutex> lock(progress_mutex);
                progress(finished, tasks.size());
            }
        }
    };
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }
    return records;
}

} // namespace squid
