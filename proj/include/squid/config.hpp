// config.hpp — Flat key = value run configuration with environment overrides
//
//   # comment
//   capacitance_F = 5e-15
//   cutoff_over_omega0 = inf, 20, 10
//
// Every key may be overridden by an environment variable SQUIDSIM_<KEY> with
// the key upper-cased (SQUIDSIM_BASIS_SIZE=50). Environment values win.

#pragma once

#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "squid/sweep.hpp"

namespace squid {

inline constexpr const char* kEnvPrefix = "SQUIDSIM_";

class ConfigError : public std::invalid_argument {
public:
    ConfigError(std::string key, int line, const std::string& what);
    const std::string& key() const noexcept { return key_; }
    int line() const noexcept { return line_; } // 0 when the value did not come from a file line

private:
    std::string key_;
    int line_;
};

struct RunConfig {
    SweepConfig sweep;
    std::string output_dir{"results"};
    std::string output_stem{"sweep"};
    bool cache{false};
    std::string cache_dir; // empty: <output_dir>/.cache
    bool record_timestamp{false};
    std::vector<Violation> warnings; // non-fatal validation findings

    // Resolved cache directory.
    std::string cache_path() const;
};

struct ConfigEntry {
    std::string value;
    int line{0};
    std::string source; // file path or "env"
};

using RawConfig = std::map<std::string, ConfigEntry>;

// Documented keys, in canonical order.
const std::vector<std::string>& config_keys();

RawConfig parse_config_text(const std::string& text, const std::string& source = "<string>");
RawConfig read_config_file(const std::string& path);

// Overlay SQUIDSIM_<KEY> variables for every documented key. getenv_fn exists
// so tests can inject an environment.
void apply_env_overrides(RawConfig& raw, const std::function<std::optional<std::string>(const std::string&)>& getenv_fn);
void apply_env_overrides(RawConfig& raw);

// Throws ConfigError naming the key (and line) on unknown keys, unparsable
// values and unsupported settings such as a non-zero temperature.
RunConfig resolve_config(const RawConfig& raw);

// Convenience: read, overlay the process environment, resolve.
RunConfig load_config(const std::string& path);

// Canonical key = value text of everything that affects results; output paths,
// worker count and cache switches are excluded.
std::string canonical_config(const RunConfig& config);

// Echo of the canonical config as an ordered key/value list.
std::vector<std::pair<std::string, std::string>> config_echo(const RunConfig& config);

} // namespace squid
