// io.hpp — CSV tables, JSON result bundles, the sweep cache and diagnostic dumps

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "squid/config.hpp"

namespace squid {

std::string version();

// Columns of the sweep CSV, in order.
const std::vector<std::string>& csv_columns();

// 17-significant-digit scientific notation; NaN prints as "nan".
std::string format_scientific(double value);

std::string records_to_csv(const std::vector<SweepRecord>& records);

struct CsvTable {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;

    bool has(const std::string& column) const;
    std::vector<double> column(const std::string& name) const; // throws std::out_of_range when absent
};

CsvTable parse_csv(const std::string& text);
CsvTable read_csv(const std::string& path);

// FNV-1a 64-bit.
std::uint64_t fnv1a(const std::string& data);

// Hex content hash of the canonical config together with the code version.
std::string config_hash(const RunConfig& config);

struct ResultBundle {
    std::vector<std::pair<std::string, std::string>> config;
    std::string hash;
    std::string version;
    std::optional<std::string> timestamp;
    std::vector<SweepRecord> records;
};

ResultBundle make_bundle(const RunConfig& config, std::vector<SweepRecord> records);
std::string bundle_to_json(const ResultBundle& bundle);
ResultBundle bundle_from_json(const std::string& text);

std::string read_text(const std::string& path);
// Writes through a temporary file and renames, so readers never see partial output.
void write_text(const std::string& path, const std::string& text);

// Cached bundle for the config, if present and matching its hash.
std::optional<ResultBundle> load_cached(const RunConfig& config);
void store_cached(const RunConfig& config, const ResultBundle& bundle);

// Row-major matrix dump: header "N,<n>" then N lines of re/im pairs
// "re(0,0),im(0,0),re(0,1),...".
std::string matrix_to_csv(const Operator& m);
// "index,real,imag" per eigenvalue.
std::string eigenvalues_to_csv(const Eigen::VectorXcd& values);

} // namespace squid
