#include "squid/io.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace squid {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

std::string version() { return SQUID_VERSION; }

const std::vector<std::string>& csv_columns()
{
    static const std::vector<std::string> columns{
        "flux_fraction",   "xi",          "purity_first",   "purity_second",   "current_first_A", "current_second_A",
        "zeta_star",       "residual_first", "residual_second", "gap_first",    "gap_second",      "N"};
    return columns;
}

std::string format_scientific(double value)
{
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.16e", value);
    return buf;
}

std::string records_to_csv(const std::vector<SweepRecord>& records)
{
    std::string out;
    const auto& columns = csv_columns();
    for (std::size_t k = 0; k < columns.size(); ++k) out += (k ? "," : "") + columns[k];
    out += "\n";
    for (const auto& r : records) {
        const double values[] = {r.flux_fraction,  r.xi,             r.purity_first,   r.purity_second,
                                 r.current_first,  r.current_second, r.zeta_star,      r.residual_first,
                                 r.residual_second, r.gap_first,     r.gap_second};
        for (const double v : values) out += format_scientific(v) + ",";
        out += std::to_string(r.n) + "\n";
    }
    return out;
}

bool CsvTable::has(const std::string& name) const
{
    return std::find(columns.begin(), columns.end(), name) != columns.end();
}

std::vector<double> CsvTable::column(const std::string& name) const
{
    const auto it = std::find(columns.begin(), columns.end(), name);
    if (it == columns.end()) throw std::out_of_range("CSV column '" + name + "' not present");
    const auto k = static_cast<std::size_t>(it - columns.begin());
    std::vector<double> out;
    out.reserve(rows.size());
    for (const auto& row : rows) out.push_back(row[k]);
    return out;
}

namespace {

std::vector<std::string> split_line(const std::string& line)
{
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string item;
    while (std::getline(ss, item, ',')) {
        while (!item.empty() && (item.back() == '\r' || item.back() == ' ')) item.pop_back();
        while (!item.empty() && item.front() == ' ') item.erase(item.begin());
        out.push_back(item);
    }
    return out;
}

double parse_cell(const std::string& cell)
{
    if (cell == "nan" || cell.empty()) return std::nan("");
    char* end = nullptr;
    const double v = std::strtod(cell.c_str(), &end);
    if (end != cell.c_str() + cell.size()) throw std::runtime_error("CSV: cannot parse '" + cell + "'");
    return v;
}

json number_to_json(double v)
{
    if (std::isfinite(v)) return v;
    return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
}

double number_from_json(const json& j)
{
    if (j.is_number()) return j.get<double>();
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (s == "inf") return std::numeric_limits<double>::infinity();
        if (s == "-inf") return -std::numeric_limits<double>::infinity();
        return std::nan("");
    }
    return std::nan("");
}

std::string utc_timestamp()
{
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

} // namespace

CsvTable parse_csv(const std::string& text)
{
    CsvTable table;
    std::stringstream in(text);
    std::string line;
    if (!std::getline(in, line)) return table;
    table.columns = split_line(line);
    int number = 1;
    while (std::getline(in, line)) {
        ++number;
        if (line.empty() || line == "\r") continue;
        const auto cells = split_line(line);
        if (cells.size() != table.columns.size())
            throw std::runtime_error("CSV line " + std::to_string(number) + ": expected " +
                                     std::to_string(table.columns.size()) + " cells, got " +
                                     std::to_string(cells.size()));
        std::vector<double> row;
        for (const auto& c : cells) row.push_back(parse_cell(c));
        table.rows.push_back(std::move(row));
    }
    return table;
}

CsvTable read_csv(const std::string& path) { return parse_csv(read_text(path)); }

std::uint64_t fnv1a(const std::string& data)
{
    std::uint64_t h = 14695981039346656037ull;
    for (const unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string config_hash(const RunConfig& config)
{
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(fnv1a(canonical_config(config) + "version = " + version() + "\n")));
    return buf;
}

ResultBundle make_bundle(const RunConfig& config, std::vector<SweepRecord> records)
{
    ResultBundle b;
    b.config = config_echo(config);
    b.hash = config_hash(config);
    b.version = version();
    if (config.record_timestamp) b.timestamp = utc_timestamp();
    b.records = std::move(records);
    return b;
}

std::string bundle_to_json(const ResultBundle& bundle)
{
    json j;
    j["version"] = bundle.version;
    json cfg = json::object();
    for (const auto& [k, v] : bundle.config) cfg[k] = v;
    j["config"] = cfg;
    j["config_hash"] = bundle.hash;

    json prov;
    prov["version"] = bundle.version;
    prov["timestamp"] = bundle.timestamp ? json(*bundle.timestamp) : json(nullptr);
    prov["N"] = bundle.records.empty() ? json(nullptr) : json(bundle.records.front().n);
    std::size_t failures = 0;
    double worst_residual = 0.0;
    double min_gap = std::numeric_limits<double>::infinity();
    for (const auto& r : bundle.records) {
        if (!r.ok()) ++failures;
        for (const double res : {r.residual_first, r.residual_second})
            if (std::isfinite(res)) worst_residual = std::max(worst_residual, res);
        for (const double g : {r.gap_first, r.gap_second})
            if (std::isfinite(g)) min_gap = std::min(min_gap, g);
    }
    prov["solver"] = {{"method", "bordered LU null-space solve"},
                      {"max_residual", worst_residual},
                      {"min_spectral_gap", number_to_json(min_gap)},
                      {"failed_points", failures}};
    j["provenance"] = prov;

    json rows = json::array();
    for (const auto& r : bundle.records) {
        json row;
        row["flux_fraction"] = number_to_json(r.flux_fraction);
        row["xi"] = number_to_json(r.xi);
        row["cutoff_over_omega0"] = number_to_json(r.cutoff_ratio);
        row["purity_first"] = number_to_json(r.purity_first);
        row["purity_second"] = number_to_json(r.purity_second);
        row["current_first_A"] = number_to_json(r.current_first);
        row["current_second_A"] = number_to_json(r.current_second);
        row["zeta_star"] = number_to_json(r.zeta_star);
        row["delta_min"] = number_to_json(r.delta_min);
        row["zeta_multimodal"] = r.zeta_multimodal;
        row["residual_first"] = number_to_json(r.residual_first);
        row["residual_second"] = number_to_json(r.residual_second);
        row["gap_first"] = number_to_json(r.gap_first);
        row["gap_second"] = number_to_json(r.gap_second);
        row["min_eigenvalue_first"] = number_to_json(r.min_eigenvalue_first);
        row["min_eigenvalue_second"] = number_to_json(r.min_eigenvalue_second);
        row["N"] = r.n;
        row["error"] = r.error.empty() ? json(nullptr) : json(r.error);
        rows.push_back(row);
    }
    j["records"] = rows;
    return j.dump(2) + "\n";
}

ResultBundle bundle_from_json(const std::string& text)
{
    const json j = json::parse(text);
    ResultBundle b;
    b.version = j.at("version").get<std::string>();
    b.hash = j.at("config_hash").get<std::string>();
    for (const auto& [k, v] : j.at("config").items()) b.config.emplace_back(k, v.get<std::string>());
    const auto& ts = j.at("provenance").at("timestamp");
    if (!ts.is_null()) b.timestamp = ts.get<std::string>();
    for (const auto& row : j.at("records")) {
        SweepRecord r;
        r.flux_fraction = number_from_json(row.at("flux_fraction"));
        r.xi = number_from_json(row.at("xi"));
        r.cutoff_ratio = number_from_json(row.at("cutoff_over_omega0"));
        r.purity_first = number_from_json(row.at("purity_first"));
        r.purity_second = number_from_json(row.at("purity_second"));
        r.current_first = number_from_json(row.at("current_first_A"));
        r.current_second = number_from_json(row.at("current_second_A"));
        r.zeta_star = number_from_json(row.at("zeta_star"));
        r.delta_min = number_from_json(row.at("delta_min"));
        r.zeta_multimodal = row.at("zeta_multimodal").get<bool>();
        r.residual_first = number_from_json(row.at("residual_first"));
        r.residual_second = number_from_json(row.at("residual_second"));
        r.gap_first = number_from_json(row.at("gap_first"));
        r.gap_second = number_from_json(row.at("gap_second"));
        r.min_eigenvalue_first = number_from_json(row.at("min_eigenvalue_first"));
        r.min_eigenvalue_second = number_from_json(row.at("min_eigenvalue_second"));
        r.n = row.at("N").get<Index>();
        if (!row.at("error").is_null()) r.error = row.at("error").get<std::string>();
        b.records.push_back(std::move(r));
    }
    return b;
}

std::string read_text(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read '" + path + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_text(const std::string& path, const std::string& text)
{
    const fs::path target(path);
    if (target.has_parent_path()) fs::create_directories(target.parent_path());
    const fs::path tmp = target.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write '" + tmp.string() + "'");
        out << text;
        if (!out) throw std::runtime_error("write failed for '" + tmp.string() + "'");
    }
    fs::rename(tmp, target);
}

std::optional<ResultBundle> load_cached(const RunConfig& config)
{
    const std::string hash = config_hash(config);
    const fs::path path = fs::path(config.cache_path()) / (hash + ".json");
    if (!fs::exists(path)) return std::nullopt;
    try {
        auto bundle = bundle_from_json(read_text(path.string()));
        if (bundle.hash != hash || bundle.version != version()) return std::nullopt;
        return bundle;
    } catch (const std::exception&) {
        return std::nullopt; // unreadable cache entries are recomputed
    }
}

void store_cached(const RunConfig& config, const ResultBundle& bundle)
{
    write_text((fs::path(config.cache_path()) / (bundle.hash + ".json")).string(), bundle_to_json(bundle));
}

std::string matrix_to_csv(const Operator& m)
{
    std::string out = "N," + std::to_string(m.rows()) + "\n";
    for (Index i = 0; i < m.rows(); ++i) {
        for (Index j = 0; j < m.cols(); ++j) {
            if (j) out += ",";
            out += format_scientific(m(i, j).real()) + "," + format_scientific(m(i, j).imag());
        }
        out += "\n";
    }
    return out;
}

std::string eigenvalues_to_csv(const Eigen::VectorXcd& values)
{
    std::string out = "index,real,imag\n";
    for (Index k = 0; k < values.size(); ++k)
        out += std::to_string(k) + "," + format_scientific(values(k).real()) + "," +
               format_scientific(values(k).imag()) + "\n";
    return out;
}

} // namespace squid
