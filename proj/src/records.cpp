#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "divvar/experiments.hpp"

namespace divvar {

using nlohmann::json;

namespace {

// JSON has no NaN; store null and read it back as NaN.
json num(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

double get_num(const json& j, const char* key) {
    const auto& v = j.at(key);
    return v.is_null() ? std::numeric_limits<double>::quiet_NaN() : v.get<double>();
}

std::string fmt17(double v) {
    if (std::isnan(v)) return "nan";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

double parse_double(const std::string& s) {
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument("csv: bad number '" + s + "'");
    return v;
}

}  // namespace

std::string utc_timestamp() {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

json to_json(const VarianceReport& r) {
    return json{{"k", r.k},
                {"d", r.d},
                {"c", r.c},
                {"X", r.X},
                {"cutoff", std::string(to_string(r.cutoff))},
                {"weight", r.weight_id},
                {"variance", num(r.variance)},
                {"main_term", num(r.main_term)},
                {"ratio", num(r.ratio)},
                {"a_k_d", num(r.a_k_d)},
                {"gamma", num(r.gamma)},
                {"gamma_method", std::string(to_string(r.gamma_method))},
                {"gamma_error", num(r.gamma_error)},
                {"prime_bound", r.prime_bound},
                {"samples", r.samples},
                {"seed", r.seed},
                {"workers", r.workers},
                {"segment_size", r.segment_size},
                {"wall_time_s", r.wall_time_s},
                {"code_version", r.code_version}};
}

VarianceReport variance_report_from_json(const json& j) {
    VarianceReport r;
    r.k = j.at("k").get<int>();
    r.d = j.at("d").get<u64>();
    r.c = j.at("c").get<double>();
    r.X = j.at("X").get<double>();
    r.cutoff = cutoff_from_string(j.at("cutoff").get<std::string>());
    r.weight_id = j.at("weight").get<std::string>();
    r.variance = get_num(j, "variance");
    r.main_term = get_num(j, "main_term");
    r.ratio = get_num(j, "ratio");
    r.a_k_d = get_num(j, "a_k_d");
    r.gamma = get_num(j, "gamma");
    r.gamma_method = gamma_method_from_string(j.at("gamma_method").get<std::string>());
    r.gamma_error = get_num(j, "gamma_error");
    r.prime_bound = j.at("prime_bound").get<u64>();
    r.samples = j.at("samples").get<u64>();
    r.seed = j.at("seed").get<u64>();
    r.workers = j.at("workers").get<int>();
    r.segment_size = j.at("segment_size").get<std::size_t>();
    r.wall_time_s = j.at("wall_time_s").get<double>();
    r.code_version = j.at("code_version").get<std::string>();
    return r;
}

json to_json(const ConstantValue& v) {
    return json{{"name", v.name},
                {"value", num(v.value)},
                {"method", std::string(to_string(v.method))},
                {"error_estimate", num(v.error_estimate)},
                {"k", v.k},
                {"d", v.d},
                {"c", v.c},
                {"prime_bound", v.prime_bound},
                {"samples", v.samples},
                {"seed", v.seed},
                {"workers", v.workers}};
}

ConstantValue constant_value_from_json(const json& j) {
    ConstantValue v;
    v.name = j.at("name").get<std::string>();
    v.value = get_num(j, "value");
    v.method = constant_method_from_string(j.at("method").get<std::string>());
    v.error_estimate = get_num(j, "error_estimate");
    v.k = j.at("k").get<int>();
    v.d = j.at("d").get<u64>();
    v.c = j.at("c").get<double>();
    v.prime_bound = j.at("prime_bound").get<u64>();
    v.samples = j.at("samples").get<u64>();
    v.seed = j.at("seed").get<u64>();
    v.workers = j.at("workers").get<int>();
    return v;
}

json make_record(const VarianceReport& r) {
    return json{{"schema_version", kSchemaVersion}, {"timestamp", utc_timestamp()}, {"kind", "variance"},
                {"payload", to_json(r)}};
}

json make_record(const ConstantValue& v) {
    return json{{"schema_version", kSchemaVersion}, {"timestamp", utc_timestamp()}, {"kind", "constant"},
                {"payload", to_json(v)}};
}

CsvRow CsvRow::from_report(const VarianceReport& r) {
    return CsvRow{r.k,        r.d,           r.c,     r.X, std::string(to_string(r.cutoff)), r.variance,
                  r.main_term, r.ratio, std::string(to_string(r.gamma_method)), r.wall_time_s};
}

std::string format_csv_row(const CsvRow& row) {
    std::ostringstream out;
    out << row.k << ',' << row.d << ',' << fmt17(row.c) << ',' << fmt17(row.X) << ',' << row.cutoff << ','
        << fmt17(row.variance) << ',' << fmt17(row.main_term) << ',' << fmt17(row.ratio) << ',' << row.gamma_method
        << ',' << fmt17(row.runtime_s);
    return out.str();
}

CsvRow parse_csv_row(const std::string& line) {
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) f.push_back(cell);
    if (f.size() != 10) throw std::invalid_argument("csv: expected 10 fields, got " + std::to_string(f.size()));
    CsvRow row;
    row.k = std::stoi(f[0]);
    row.d = std::stoull(f[1]);
    row.c = parse_double(f[2]);
    row.X = parse_double(f[3]);
    row.cutoff = f[4];
    row.variance = parse_double(f[5]);
    row.main_term = parse_double(f[6]);
    row.ratio = parse_double(f[7]);
    row.gamma_method = f[8];
    row.runtime_s = parse_double(f[9]);
    return row;
}

std::vector<CsvRow> read_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::vector<CsvRow> rows;
    std::string line;
    bool header = true;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (header) {
            header = false;
            if (line == kCsvHeader) continue;
        }
        rows.push_back(parse_csv_row(line));
    }
    return rows;
}

}  // namespace divvar
