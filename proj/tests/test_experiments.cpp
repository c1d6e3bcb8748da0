#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "divvar/experiments.hpp"
#include "divvar/plot.hpp"
#include "divvar/verify.hpp"

using namespace divvar;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    const auto p = fs::temp_directory_path() / ("divvar_test_" + name);
    fs::remove_all(p);
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int run_cli(const std::string& args) {
    const std::string cmd = std::string(DIVVAR_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    const int rc = std::system(cmd.c_str());
    return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

}  // namespace

TEST_CASE("config parsing") {
    std::istringstream in(R"(# sweep
k = 3, 4
d_primes = 100..120
c = 2.5,2.6   # two exponents
cutoff = sharp
gamma_method = mc
prime_bound = 1e5
samples = 20000
seed = 9
out = /tmp/x
workers = 3
segment = 65536
)");
    const auto cfg = parse_config(in);
    CHECK(cfg.k_list == std::vector<int>{3, 4});
    CHECK(cfg.d_list == std::vector<u64>{101, 103, 107, 109, 113});
    CHECK(cfg.c_list == std::vector<double>{2.5, 2.6});
    CHECK(cfg.cutoff == CutoffKind::Sharp);
    CHECK(cfg.gamma_method == GammaMethod::MonteCarlo);
    CHECK(cfg.prime_bound == 100'000);
    CHECK(cfg.samples == 20'000);
    CHECK(cfg.seed == 9);
    CHECK(cfg.out_dir == "/tmp/x");
    CHECK(cfg.workers == 3);
    CHECK(cfg.segment == 65536);
    CHECK_NOTHROW(cfg.validate());

    std::istringstream bad_key("colour = blue\n");
    CHECK_THROWS_AS(parse_config(bad_key), std::invalid_argument);
    std::istringstream bad_value("k = three\n");
    CHECK_THROWS_AS(parse_config(bad_value), std::invalid_argument);
    std::istringstream no_eq("k 3\n");
    CHECK_THROWS_AS(parse_config(no_eq), std::invalid_argument);

    SweepConfig s;
    s.k_list = {3};
    s.c_list = {1.5};
    CHECK_THROWS_AS(s.validate(), std::invalid_argument);
    s.gamma_method = GammaMethod::Piecewise;
    CHECK_NOTHROW(s.validate());
    s.k_list = {4};
    CHECK_THROWS(s.validate());
    s.gamma_method = GammaMethod::MonteCarlo;
    CHECK_NOTHROW(s.validate());
}

TEST_CASE("csv round-trip") {
    CsvRow row{3, 1009, 2.6, 64578019.123, "smooth", 1.0 / 3.0, 2.0 / 7.0, std::nan(""), "simple", 1e-300};
    const auto back = parse_csv_row(format_csv_row(row));
    CHECK(back.k == row.k);
    CHECK(back.d == row.d);
    CHECK(back.c == row.c);
    CHECK(back.X == row.X);
    CHECK(back.cutoff == row.cutoff);
    CHECK(back.variance == row.variance);
    CHECK(back.main_term == row.main_term);
    CHECK(std::isnan(back.ratio));
    CHECK(back.gamma_method == row.gamma_method);
    CHECK(back.runtime_s == row.runtime_s);
    CHECK_THROWS(parse_csv_row("1,2,3"));
}

TEST_CASE("json records round-trip") {
    VarianceReport r;
    r.k = 2;
    r.d = 7;
    r.c = 1.7;
    r.X = 27.3;
    r.cutoff = CutoffKind::Smooth;
    r.weight_id = "bump";
    r.variance = 0.1;
    r.main_term = 0.0;
    r.ratio = std::numeric_limits<double>::quiet_NaN();
    r.samples = 77;
    r.seed = 3;
    r.workers = 8;
    r.segment_size = 1024;
    r.code_version = "t";
    const auto rec = make_record(r);
    CHECK(rec.at("schema_version") == kSchemaVersion);
    CHECK(rec.at("kind") == "variance");
    CHECK(rec.at("timestamp").get<std::string>().size() == 20);
    auto back = variance_report_from_json(nlohmann::json::parse(rec.dump()).at("payload"));
    CHECK(std::isnan(back.ratio));
    back.ratio = r.ratio = 0.0;
    CHECK(back == r);

    ConstantValue v = a_k_d(3, 10);
    const auto cback = constant_value_from_json(nlohmann::json::parse(make_record(v).dump()).at("payload"));
    CHECK(cback == v);
}

TEST_CASE("sweep") {
    SweepConfig cfg;
    cfg.k_list = {3};
    cfg.c_list = {2.5};
    cfg.out_dir = scratch("empty");
    std::ostringstream log;
    const auto empty = run_sweep(cfg, log);
    CHECK(empty.reports.empty());
    CHECK(empty.failures == 0);
    CHECK(slurp(empty.csv_path) == std::string(kCsvHeader) + "\n");

    cfg.d_list = {101};
    cfg.out_dir = scratch("one");
    const auto one = run_sweep(cfg, log);
    REQUIRE(one.reports.size() == 1);
    const auto rows = read_csv(one.csv_path);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].variance == one.reports[0].variance);
    CHECK(rows[0].ratio == one.reports[0].ratio);
    std::ifstream rec(one.records_path);
    std::string line;
    int lines = 0;
    while (std::getline(rec, line)) {
        const auto j = nlohmann::json::parse(line);
        CHECK(variance_report_from_json(j.at("payload")) == one.reports[0]);
        ++lines;
    }
    CHECK(lines == 1);

    // X = 10007^2.6 is beyond the sieve budget: that point fails, the rest run.
    cfg.d_list = {10007, 101};
    cfg.out_dir = scratch("partial");
    std::ostringstream plog;
    const auto partial = run_sweep(cfg, plog);
    CHECK(partial.failures == 1);
    CHECK(partial.reports.size() == 1);
    CHECK(plog.str().find("FAILED") != std::string::npos);
    CHECK(read_csv(partial.csv_path).size() == 1);
}

TEST_CASE("verify dispatch") {
    CHECK(verify_suite_names().size() >= 8);
    try {
        run_verify("nonsense");
        FAIL("expected an exception");
    } catch (const std::invalid_argument& e) {
        const std::string msg = e.what();
        for (const char* s : {"orthogonality", "gauss", "magic", "gamma3", "moment", "variance-equivalence",
                              "convolution-trend", "mellin-decay"}) {
            CHECK(msg.find(s) != std::string::npos);
        }
    }
    for (const char* s : {"gauss", "magic", "gamma3", "moment", "records"}) {
        const auto rep = run_verify(s);
        CHECK(rep.passed());
        const auto j = rep.to_json();
        CHECK(j.at("suite") == s);
        CHECK(j.at("checks").size() == rep.checks.size());
    }
}

TEST_CASE("plots") {
    const auto pts = gamma3_samples();
    REQUIRE(pts.size() == 601);
    CHECK(pts[0].second == 0.0);
    CHECK(pts[200].first == 1.0);
    CHECK(pts[200].second == 9.0);
    CHECK(pts[400].second == 9.0);
    CHECK(pts[600].second == 0.0);
    std::size_t arg = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (pts[i].second > pts[arg].second) arg = i;
    }
    CHECK(pts[arg].first == 1.5);

    const auto dir = scratch("plots");
    emit_gamma3_plot(dir / "g3.svg");
    const auto svg = slurp(dir / "g3.svg");
    CHECK(svg.find("<polyline") != std::string::npos);
    CHECK(read_svg_samples(svg) == pts);

    fs::create_directories(dir);
    std::ofstream(dir / "empty.csv") << kCsvHeader << '\n';
    CHECK_NOTHROW(emit_ratio_plot(dir / "empty.csv", dir / "ratio.svg"));
    CHECK(slurp(dir / "ratio.svg").find("</svg>") != std::string::npos);
    CHECK_THROWS_AS(emit_gamma3_plot("/proc/nope/g3.svg"), std::runtime_error);
}

TEST_CASE("cli exit status") {
    const auto dir = scratch("cli");
    fs::create_directories(dir);
    CHECK(run_cli("tau --k 3 --n 12") == 0);
    CHECK(run_cli("gamma --k 3 --c 2.5") == 0);
    CHECK(run_cli("gamma --k 3 --c 1.5") != 0);
    CHECK(run_cli("verify gamma3 magic") == 0);
    CHECK(run_cli("verify nonsense") != 0);
    CHECK(run_cli("variance --k 2 --d 7 --c 1.5 --cutoff sharp --out " + (dir / "v.jsonl").string()) == 0);
    CHECK(fs::exists(dir / "v.jsonl"));
    CHECK(run_cli("plot gamma3 --out " + (dir / "g.svg").string()) == 0);
    CHECK(run_cli("plot ratio-csv --csv " + (dir / "missing.csv").string() + " --out " + (dir / "r.svg").string()) != 0);
    CHECK(run_cli("sweep --k 3 --d 101 --c 2.5 --out " + (dir / "sw").string()) == 0);
    CHECK(read_csv(dir / "sw" / "sweep.csv").size() == 1);
    CHECK(run_cli("sweep --k 3 --d 10007 --c 2.6 --out " + (dir / "sw2").string()) != 0);
    CHECK(run_cli("bogus") != 0);
}
