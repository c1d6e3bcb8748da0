#pragma once

// Sweep configuration, persisted records (JSON lines + CSV summary) and the
// sweep driver behind `divvar sweep`.

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "divvar/variance.hpp"

namespace divvar {

inline constexpr int kSchemaVersion = 1;

/// Flat `key = value` experiment description. Lists are comma separated;
/// `d_primes = lo..hi` expands to the primes in [lo, hi].
struct SweepConfig {
    std::vector<int> k_list;
    std::vector<u64> d_list;
    std::vector<double> c_list;
    CutoffKind cutoff = CutoffKind::Smooth;
    GammaMethod gamma_method = GammaMethod::Simple;
    u64 prime_bound = kDefaultPrimeBound;
    u64 samples = 10'000'000;
    u64 seed = 20240601;
    std::filesystem::path out_dir = "results";
    int workers = 0;
    std::size_t segment = kDefaultSegmentSize;

    /// Throws std::invalid_argument naming the first offending (k, c) pair.
    void validate() const;
};

SweepConfig parse_config(std::istream& in);
SweepConfig load_config(const std::filesystem::path& path);
/// Applies one `key = value` assignment; used by the parser and CLI overrides.
void apply_config_key(SweepConfig& cfg, const std::string& key, const std::string& value);

std::vector<u64> primes_in_range(u64 lo, u64 hi);

// JSON line records ---------------------------------------------------------

nlohmann::json to_json(const VarianceReport& r);
VarianceReport variance_report_from_json(const nlohmann::json& j);
nlohmann::json to_json(const ConstantValue& v);
ConstantValue constant_value_from_json(const nlohmann::json& j);

/// {"schema_version", "timestamp", "kind", "payload"}.
nlohmann::json make_record(const VarianceReport& r);
nlohmann::json make_record(const ConstantValue& v);
std::string utc_timestamp();

// CSV summary ----------------------------------------------------------------

inline constexpr const char* kCsvHeader = "k,d,c,X,cutoff,variance,main_term,ratio,gamma_method,runtime_s";

struct CsvRow {
    int k = 0;
    u64 d = 0;
    double c = 0.0;
    double X = 0.0;
    std::string cutoff;
    double variance = 0.0;
    double main_term = 0.0;
    double ratio = 0.0;
    std::string gamma_method;
    double runtime_s = 0.0;

    static CsvRow from_report(const VarianceReport& r);
};

std::string format_csv_row(const CsvRow& row);
CsvRow parse_csv_row(const std::string& line);
std::vector<CsvRow> read_csv(const std::filesystem::path& path);

// Sweep ----------------------------------------------------------------------

struct SweepResult {
    std::vector<VarianceReport> reports;
    std::filesystem::path csv_path;
    std::filesystem::path records_path;
    int failures = 0;
};

/// One experiment per (k, d, c) in config order. Rows and records are flushed
/// after every point; a failing point is logged to `log` and skipped.
SweepResult run_sweep(const SweepConfig& cfg, std::ostream& log);

}  // namespace divvar
