#include "squid/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

namespace squid {

ConfigError::ConfigError(std::string key, int line, const std::string& what)
    : std::invalid_argument((line > 0 ? "line " + std::to_string(line) + ": " : std::string()) +
                            (key.empty() ? what : key + ": " + what)),
      key_(std::move(key)), line_(line)
{
}

std::string RunConfig::cache_path() const { return cache_dir.empty() ? output_dir + "/.cache" : cache_dir; }

const std::vector<std::string>& config_keys()
{
    static const std::vector<std::string> keys{
        "capacitance_F",      "inductance_H",     "josephson_energy_J", "gamma_rad_s",   "gamma_over_omega0",
        "quality_factor",     "cutoff_over_omega0", "temperature_K",    "flux_fraction", "external_flux_Wb",
        "flux_min",           "flux_max",         "flux_points",        "basis_size",    "orders",
        "generator_family",   "zeta_mode",        "zeta",               "zeta_grid_points", "zeta_tolerance",
        "renormalize",        "include_squeeze",  "sin_term_coefficient", "workers",     "output_dir",
        "output_stem",        "cache",            "cache_dir",          "record_timestamp"};
    return keys;
}

namespace {

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::string lower(std::string s)
{
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    return s;
}

bool known_key(const std::string& key)
{
    const auto& keys = config_keys();
    return std::find(keys.begin(), keys.end(), key) != keys.end();
}

std::string format_double(double v)
{
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

class Resolver {
public:
    explicit Resolver(const RawConfig& raw) : raw_(raw) {}

    bool has(const std::string& key) const { return raw_.count(key) > 0; }

    [[noreturn]] void fail(const std::string& key, const std::string& what) const
    {
        const auto it = raw_.find(key);
        throw ConfigError(key, it == raw_.end() ? 0 : it->second.line,
                          what + (it != raw_.end() && it->second.source == "env" ? " (from environment)" : ""));
    }

    double number(const std::string& key, double fallback, bool allow_inf = false) const
    {
        if (!has(key)) return fallback;
        return parse_number(key, raw_.at(key).value, allow_inf);
    }

    double parse_number(const std::string& key, const std::string& text, bool allow_inf) const
    {
        const std::string t = lower(trim(text));
        if (allow_inf && (t == "inf" || t == "infinity")) return std::numeric_limits<double>::infinity();
        if (t.empty()) fail(key, "empty value");
        char* end = nullptr;
        const double v = std::strtod(t.c_str(), &end);
        if (end != t.c_str() + t.size() || std::isnan(v) || (!allow_inf && std::isinf(v)))
            fail(key, "expected a finite number, got '" + trim(text) + "'");
        return v;
    }

    long integer(const std::string& key, long fallback) const
    {
        if (!has(key)) return fallback;
        const std::string t = trim(raw_.at(key).value);
        char* end = nullptr;
        const long v = std::strtol(t.c_str(), &end, 10);
        if (t.empty() || end != t.c_str() + t.size()) fail(key, "expected an integer, got '" + t + "'");
        return v;
    }

    bool boolean(const std::string& key, bool fallback) const
    {
        if (!has(key)) return fallback;
        const std::string t = lower(trim(raw_.at(key).value));
        if (t == "true" || t == "1" || t == "yes" || t == "on") return true;
        if (t == "false" || t == "0" || t == "no" || t == "off") return false;
        fail(key, "expected a boolean (true/false), got '" + t + "'");
    }

    std::string text(const std::string& key, const std::string& fallback) const
    {
        return has(key) ? trim(raw_.at(key).value) : fallback;
    }

    std::vector<std::string> list(const std::string& key) const
    {
        std::vector<std::string> out;
        std::stringstream ss(raw_.at(key).value);
        std::string item;
        while (std::getline(ss, item, ',')) {
            item = trim(item);
            if (item.empty()) fail(key, "empty list element");
            out.push_back(item);
        }
        if (out.empty()) fail(key, "empty list");
        return out;
    }

private:
    const RawConfig& raw_;
};

} // namespace

RawConfig parse_config_text(const std::string& text, const std::string& source)
{
    RawConfig raw;
    std::stringstream in(text);
    std::string line;
    int number = 0;
    while (std::getline(in, line)) {
        ++number;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError("", number, "expected 'key = value', got '" + line + "'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw ConfigError("", number, "missing key before '='");
        if (!known_key(key)) throw ConfigError(key, number, "unknown key");
        if (raw.count(key)) throw ConfigError(key, number, "duplicate key (first set on line " +
                                                               std::to_string(raw[key].line) + ")");
        raw[key] = {value, number, source};
    }
    return raw;
}

RawConfig read_config_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw ConfigError("", 0, "cannot read config file '" + path + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_config_text(buffer.str(), path);
}

void apply_env_overrides(RawConfig& raw,
                         const std::function<std::optional<std::string>(const std::string&)>& getenv_fn)
{
    for (const auto& key : config_keys()) {
        std::string name = kEnvPrefix;
        for (const char c : key) name += static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
        if (auto value = getenv_fn(name)) raw[key] = {trim(*value), 0, "env"};
    }
}

void apply_env_overrides(RawConfig& raw)
{
    apply_env_overrides(raw, [](const std::string& name) -> std::optional<std::string> {
        const char* v = std::getenv(name.c_str());
        if (!v) return std::nullopt;
        return std::string(v);
    });
}

RunConfig resolve_config(const RawConfig& raw)
{
    const Resolver r(raw);
    RunConfig cfg;
    auto& sw = cfg.sweep;

    sw.squid.capacitance = r.number("capacitance_F", sw.squid.capacitance);
    sw.squid.inductance = r.number("inductance_H", sw.squid.inductance);
    sw.squid.josephson_energy = r.number("josephson_energy_J", sw.squid.josephson_energy);
    for (const char* key : {"capacitance_F", "inductance_H", "josephson_energy_J"})
        if (r.has(key) && !(r.number(key, 0.0) > 0.0)) r.fail(key, "must be strictly positive");

    const double temperature = r.number("temperature_K", 0.0);
    if (temperature != 0.0) r.fail("temperature_K", "only T=0 supported");

    const double omega0 = 1.0 / std::sqrt(sw.squid.inductance * sw.squid.capacitance);
    const int gamma_keys = r.has("gamma_rad_s") + r.has("gamma_over_omega0") + r.has("quality_factor");
    if (gamma_keys > 1) {
        const char* second = r.has("quality_factor") ? "quality_factor" : "gamma_over_omega0";
        r.fail(second, "set only one of gamma_rad_s, gamma_over_omega0, quality_factor");
    }
    if (r.has("gamma_rad_s")) sw.gamma_ratio = r.number("gamma_rad_s", 0.0) / omega0;
    if (r.has("gamma_over_omega0")) sw.gamma_ratio = r.number("gamma_over_omega0", 0.0);
    if (r.has("quality_factor")) {
        const double q = r.number("quality_factor", 0.0);
        if (!(q > 0.0)) r.fail("quality_factor", "must be strictly positive");
        sw.gamma_ratio = 1.0 / q;
    }
    if (!(sw.gamma_ratio >= 0.0)) r.fail(r.has("gamma_rad_s") ? "gamma_rad_s" : "gamma_over_omega0",
                                         "damping must be non-negative");

    if (r.has("cutoff_over_omega0")) {
        sw.cutoff_ratios.clear();
        for (const auto& item : r.list("cutoff_over_omega0")) {
            const double v = r.parse_number("cutoff_over_omega0", item, true);
            if (!(v > 0.0)) r.fail("cutoff_over_omega0", "cutoffs must be strictly positive");
            sw.cutoff_ratios.push_back(v);
        }
    }

    const bool single_flux = r.has("flux_fraction") || r.has("external_flux_Wb");
    if (r.has("flux_fraction") && r.has("external_flux_Wb"))
        r.fail("external_flux_Wb", "set only one of flux_fraction, external_flux_Wb");
    if (single_flux) {
        for (const char* key : {"flux_min", "flux_max", "flux_points"})
            if (r.has(key)) r.fail(key, "conflicts with a single flux_fraction/external_flux_Wb point");
        const double phi = r.has("flux_fraction") ? r.number("flux_fraction", 0.0)
                                                  : r.number("external_flux_Wb", 0.0) / PhysicalConstants{}.flux_quantum;
        sw.squid.flux_fraction = phi;
        sw.flux_min = sw.flux_max = phi;
        sw.flux_points = 1;
    } else {
        sw.flux_min = r.number("flux_min", sw.flux_min);
        sw.flux_max = r.number("flux_max", sw.flux_max);
        sw.flux_points = r.integer("flux_points", sw.flux_points);
    }
    sw.basis_size = r.integer("basis_size", sw.basis_size);

    if (r.has("orders")) {
        sw.first_order = sw.second_order = false;
        for (const auto& item : r.list("orders")) {
            if (item == "1") sw.first_order = true;
            else if (item == "2") sw.second_order = true;
            else r.fail("orders", "orders must be 1 and/or 2, got '" + item + "'");
        }
    }

    const std::string family = lower(r.text("generator_family", "lindblad"));
    if (family == "lindblad") sw.family = GeneratorFamily::lindblad;
    else if (family == "caldeira_leggett" || family == "cl") sw.family = GeneratorFamily::caldeira_leggett;
    else r.fail("generator_family", "expected lindblad or caldeira_leggett, got '" + family + "'");

    const std::string mode = lower(r.text("zeta_mode", r.has("zeta") ? "fixed" : "one_minus_xi"));
    if (mode == "fixed") sw.zeta_mode = ZetaMode::fixed;
    else if (mode == "one_minus_xi") sw.zeta_mode = ZetaMode::one_minus_xi;
    else if (mode == "optimize") sw.zeta_mode = ZetaMode::optimize;
    else r.fail("zeta_mode", "expected fixed, one_minus_xi or optimize, got '" + mode + "'");
    sw.zeta = r.number("zeta", sw.zeta);
    if (!(sw.zeta > 0.0 && sw.zeta < 1.0)) r.fail("zeta", "must lie strictly inside (0, 1)");
    sw.zeta_grid_points = static_cast<int>(r.integer("zeta_grid_points", sw.zeta_grid_points));
    if (sw.zeta_grid_points < 3) r.fail("zeta_grid_points", "must be at least 3");
    sw.zeta_tolerance = r.number("zeta_tolerance", sw.zeta_tolerance);
    if (!(sw.zeta_tolerance > 0.0)) r.fail("zeta_tolerance", "must be strictly positive");

    sw.generator.renormalize = r.boolean("renormalize", sw.generator.renormalize);
    sw.generator.include_squeeze = r.boolean("include_squeeze", sw.generator.include_squeeze);
    if (r.has("sin_term_coefficient")) {
        const std::string t = lower(r.text("sin_term_coefficient", ""));
        if (t == "consistent") sw.generator.sin_coefficient = SinTermCoefficient::consistent;
        else if (t == "printed") sw.generator.sin_coefficient = SinTermCoefficient::printed;
        else sw.generator.sin_coefficient_value = r.parse_number("sin_term_coefficient", t, false);
    }

    const long workers = r.integer("workers", 0);
    if (workers < 0) r.fail("workers", "must be >= 0 (0 selects all hardware threads)");
    sw.workers = static_cast<unsigned>(workers);
    cfg.output_dir = r.text("output_dir", cfg.output_dir);
    cfg.output_stem = r.text("output_stem", cfg.output_stem);
    if (cfg.output_dir.empty()) r.fail("output_dir", "must not be empty");
    if (cfg.output_stem.empty() || cfg.output_stem.find('/') != std::string::npos)
        r.fail("output_stem", "must be a plain file name stem");
    cfg.cache = r.boolean("cache", cfg.cache);
    cfg.cache_dir = r.text("cache_dir", cfg.cache_dir);
    cfg.record_timestamp = r.boolean("record_timestamp", cfg.record_timestamp);

    // Range and consistency checks shared with `validate`; errors are fatal.
    BathParams bath;
    bath.damping_rate = sw.gamma_ratio * omega0;
    bath.cutoff_frequency = sw.cutoff_ratios.front() * omega0;
    SimulationConfig sim{sw.basis_size, sw.flux_points, sw.flux_min, sw.flux_max};
    const auto report = validate_params(sw.squid, bath, sim);
    for (const auto& v : report.violations) {
        if (v.severity == Severity::error) r.fail(v.key, v.message);
        cfg.warnings.push_back(v);
    }
    for (const double cutoff : sw.cutoff_ratios)
        if (sw.second_order && sw.family == GeneratorFamily::lindblad && !(1.0 / cutoff < 1.0))
            r.fail("cutoff_over_omega0", "second-order Lindblad generators need Omega > omega0");
    return cfg;
}

RunConfig load_config(const std::string& path)
{
    RawConfig raw = read_config_file(path);
    apply_env_overrides(raw);
    return resolve_config(raw);
}

std::vector<std::pair<std::string, std::string>> config_echo(const RunConfig& config)
{
    const auto& sw = config.sweep;
    std::string cutoffs;
    for (std::size_t k = 0; k < sw.cutoff_ratios.size(); ++k)
        cutoffs += (k ? "," : "") + format_double(sw.cutoff_ratios[k]);
    std::string orders;
    if (sw.first_order) orders += "1";
    if (sw.second_order) orders += orders.empty() ? "2" : ",2";
    std::string sin_term = sw.generator.sin_coefficient_value
                               ? format_double(*sw.generator.sin_coefficient_value)
                               : (sw.generator.sin_coefficient == SinTermCoefficient::printed ? "printed"
                                                                                              : "consistent");
    return {
        {"capacitance_F", format_double(sw.squid.capacitance)},
        {"inductance_H", format_double(sw.squid.inductance)},
        {"josephson_energy_J", format_double(sw.squid.josephson_energy)},
        {"gamma_over_omega0", format_double(sw.gamma_ratio)},
        {"cutoff_over_omega0", cutoffs},
        {"temperature_K", "0"},
        {"flux_min", format_double(sw.flux_min)},
        {"flux_max", format_double(sw.flux_max)},
        {"flux_points", std::to_string(sw.flux_points)},
        {"basis_size", std::to_string(sw.basis_size)},
        {"orders", orders},
        {"generator_family", to_string(sw.family)},
        {"zeta_mode", to_string(sw.zeta_mode)},
        {"zeta", format_double(sw.zeta)},
        {"zeta_grid_points", std::to_string(sw.zeta_grid_points)},
        {"zeta_tolerance", format_double(sw.zeta_tolerance)},
        {"renormalize", sw.generator.renormalize ? "true" : "false"},
        {"include_squeeze", sw.generator.include_squeeze ? "true" : "false"},
        {"sin_term_coefficient", sin_term},
    };
}

std::string canonical_config(const RunConfig& config)
{
    std::string out;
    for (const auto& [key, value] : config_echo(config)) out += key + " = " + value + "\n";
    return out;
}

} // namespace squid
