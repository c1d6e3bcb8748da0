#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "divvar/experiments.hpp"
#include "divvar/plot.hpp"
#include "divvar/verify.hpp"

using namespace divvar;
using nlohmann::json;

namespace {

struct Common {
    int k = 3;
    std::vector<u64> d;
    std::vector<double> c;
    std::string cutoff = "smooth";
    std::string gamma_method = "simple";
    u64 samples = 10'000'000;
    u64 seed = 20240601;
    u64 prime_bound = kDefaultPrimeBound;
    int workers = 0;
    std::string out;
    std::string config;
};

void append_record(const std::string& path, const json& rec) {
    if (path.empty()) return;
    std::ofstream f(path, std::ios::app);
    if (!f) throw std::runtime_error("cannot write " + path);
    f << rec.dump() << '\n';
}

std::string join(const std::vector<std::string>& v) {
    std::string s;
    for (const auto& x : v) s += (s.empty() ? "" : ",") + x;
    return s;
}

template <class T>
std::string join_nums(const std::vector<T>& v) {
    std::ostringstream o;
    o.precision(17);
    for (std::size_t i = 0; i < v.size(); ++i) o << (i ? "," : "") << v[i];
    return o.str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Variance of divisor functions in arithmetic progressions"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(code_version()));
    Common o;

    auto* tau = app.add_subcommand("tau", "print tau_k(n) for one n or a range [lo, hi)");
    std::optional<u64> n, lo, hi;
    tau->add_option("--k", o.k, "k")->capture_default_str();
    tau->add_option("--n", n, "single n");
    tau->add_option("--lo", lo, "range start");
    tau->add_option("--hi", hi, "range end (exclusive)");

    auto* constants = app.add_subcommand("constants", "a_k, a_k(d) and g_k");
    constants->add_option("--k", o.k)->capture_default_str();
    constants->add_option("--d", o.d, "moduli for a_k(d)");
    constants->add_option("--prime-bound", o.prime_bound)->capture_default_str();
    constants->add_option("--out", o.out, "append JSON line records here");

    auto* gamma = app.add_subcommand("gamma", "gamma_k(c)");
    gamma->add_option("--k", o.k)->capture_default_str();
    gamma->add_option("--c", o.c)->required();
    gamma->add_option("--gamma-method", o.gamma_method)
        ->check(CLI::IsMember({"simple", "piecewise", "mc"}))
        ->capture_default_str();
    gamma->add_option("--samples", o.samples)->capture_default_str();
    gamma->add_option("--seed", o.seed)->capture_default_str();
    gamma->add_option("--workers", o.workers)->capture_default_str();
    gamma->add_option("--out", o.out, "append JSON line records here");

    auto* variance = app.add_subcommand("variance", "one variance experiment at X = d^c");
    variance->add_option("--k", o.k)->capture_default_str();
    variance->add_option("--d", o.d)->required();
    variance->add_option("--c", o.c)->required();
    variance->add_option("--cutoff", o.cutoff)->check(CLI::IsMember({"sharp", "smooth"}))->capture_default_str();
    variance->add_option("--gamma-method", o.gamma_method)
        ->check(CLI::IsMember({"simple", "piecewise", "mc"}))
        ->capture_default_str();
    variance->add_option("--samples", o.samples)->capture_default_str();
    variance->add_option("--seed", o.seed)->capture_default_str();
    variance->add_option("--prime-bound", o.prime_bound)->capture_default_str();
    variance->add_option("--workers", o.workers)->capture_default_str();
    variance->add_option("--out", o.out, "append JSON line records here");

    auto* sweep = app.add_subcommand("sweep", "run a configured grid of experiments");
    sweep->add_option("--config", o.config, "key = value config file");
    // Flags given here override the config file.
    std::vector<int> sk;
    std::vector<u64> sd;
    std::vector<double> sc;
    std::optional<std::string> scut, sgm, sout;
    std::optional<u64> ssamples, sseed, spb;
    std::optional<int> sworkers;
    sweep->add_option("--k", sk)->delimiter(',');
    sweep->add_option("--d", sd)->delimiter(',');
    sweep->add_option("--c", sc)->delimiter(',');
    sweep->add_option("--cutoff", scut)->check(CLI::IsMember({"sharp", "smooth"}));
    sweep->add_option("--gamma-method", sgm)->check(CLI::IsMember({"simple", "piecewise", "mc"}));
    sweep->add_option("--samples", ssamples);
    sweep->add_option("--seed", sseed);
    sweep->add_option("--prime-bound", spb);
    sweep->add_option("--workers", sworkers);
    sweep->add_option("--out", sout, "output directory");

    auto* verify = app.add_subcommand("verify", "run self-check suites (default: all)");
    std::vector<std::string> suites;
    VerifyOptions vo;
    verify->add_option("suites", suites, "suite names: " + join(verify_suite_names()));
    verify->add_option("--samples", vo.samples, "Monte Carlo samples")->capture_default_str();
    verify->add_option("--seed", vo.seed)->capture_default_str();
    verify->add_option("--workers", vo.workers)->capture_default_str();
    verify->add_option("--out", o.out, "write the JSON report here");

    auto* plot = app.add_subcommand("plot", "write an SVG figure");
    std::string target, csv;
    plot->add_option("target", target)->required()->check(CLI::IsMember({"gamma3", "ratio-csv"}));
    plot->add_option("--csv", csv, "sweep CSV for ratio-csv");
    plot->add_option("--out", o.out)->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*tau) {
            if (n) {
                std::cout << tau_k_of(o.k, *n) << '\n';
            } else if (lo && hi) {
                TauSieve sieve(o.k, *hi, kDefaultSegmentSize);
                for (u64 a = *lo; a < *hi; a += kDefaultSegmentSize) {
                    const u64 b = std::min<u64>(a + kDefaultSegmentSize, *hi);
                    const auto seg = sieve.segment(a, b);
                    for (u64 m = a; m < b; ++m) std::cout << m << ' ' << seg[m] << '\n';
                }
            } else {
                std::cerr << "tau: give --n or both --lo and --hi\n";
                return 2;
            }
            return 0;
        }

        if (*constants) {
            std::vector<ConstantValue> values{a_k_value(o.k, o.prime_bound)};
            for (u64 d : o.d) values.push_back(a_k_d(o.k, d, o.prime_bound));
            ConstantValue g;
            g.name = "g_k";
            g.k = o.k;
            g.method = ConstantMethod::ClosedForm;
            g.value = static_cast<double>(g_k(o.k));
            values.push_back(g);
            for (const auto& v : values) {
                const auto rec = make_record(v);
                std::cout << rec.at("payload").dump() << '\n';
                append_record(o.out, rec);
            }
            return 0;
        }

        if (*gamma) {
            const auto method = gamma_method_from_string(o.gamma_method);
            for (double c : o.c) {
                ConstantValue v;
                switch (method) {
                    case GammaMethod::Simple:
                        v.value = gamma_k_simple(o.k, c);
                        v.method = ConstantMethod::ClosedForm;
                        break;
                    case GammaMethod::Piecewise:
                        v.value = gamma_piecewise_table(o.k).eval(c);
                        v.method = ConstantMethod::Piecewise;
                        break;
                    case GammaMethod::MonteCarlo: v = gamma_k_mc(o.k, c, o.samples, o.seed, o.workers); break;
                }
                v.name = "gamma_k(c)";
                v.k = o.k;
                v.c = c;
                const auto rec = make_record(v);
                std::cout << rec.at("payload").dump() << '\n';
                append_record(o.out, rec);
            }
            return 0;
        }

        if (*variance) {
            int failures = 0;
            for (u64 d : o.d) {
                for (double c : o.c) {
                    ExperimentConfig ec;
                    ec.k = o.k;
                    ec.d = d;
                    ec.c = c;
                    ec.cutoff = cutoff_from_string(o.cutoff);
                    ec.gamma_method = gamma_method_from_string(o.gamma_method);
                    ec.constants = {o.prime_bound, o.samples, o.seed, o.workers};
                    ec.variance.workers = o.workers;
                    try {
                        const auto rec = make_record(experiment(ec));
                        std::cout << rec.at("payload").dump() << '\n';
                        append_record(o.out, rec);
                    } catch (const std::exception& e) {
                        ++failures;
                        std::cerr << "d=" << d << " c=" << c << ": " << e.what() << '\n';
                    }
                }
            }
            return failures ? 1 : 0;
        }

        if (*sweep) {
            SweepConfig cfg = o.config.empty() ? SweepConfig{} : load_config(o.config);
            if (!sk.empty()) apply_config_key(cfg, "k", join_nums(sk));
            if (!sd.empty()) apply_config_key(cfg, "d", join_nums(sd));
            if (!sc.empty()) apply_config_key(cfg, "c", join_nums(sc));
            if (scut) apply_config_key(cfg, "cutoff", *scut);
            if (sgm) apply_config_key(cfg, "gamma_method", *sgm);
            if (ssamples) cfg.samples = *ssamples;
            if (sseed) cfg.seed = *sseed;
            if (spb) cfg.prime_bound = *spb;
            if (sworkers) cfg.workers = *sworkers;
            if (sout) cfg.out_dir = *sout;
            const auto res = run_sweep(cfg, std::cerr);
            std::cout << res.csv_path.string() << '\n' << res.records_path.string() << '\n';
            return res.failures ? 1 : 0;
        }

        if (*verify) {
            if (suites.empty()) suites = verify_suite_names();
            json all = json::array();
            bool ok = true;
            for (const auto& s : suites) {
                const auto rep = run_verify(s, vo);
                ok = ok && rep.passed();
                all.push_back(rep.to_json());
                std::cerr << (rep.passed() ? "PASS " : "FAIL ") << s << " (" << rep.seconds << " s)\n";
            }
            const json doc{{"passed", ok}, {"suites", all}};
            std::cout << doc.dump(2) << '\n';
            if (!o.out.empty()) {
                std::ofstream f(o.out);
                if (!f) throw std::runtime_error("cannot write " + o.out);
                f << doc.dump(2) << '\n';
            }
            return ok ? 0 : 1;
        }

        if (*plot) {
            if (target == "gamma3") {
                emit_gamma3_plot(o.out);
            } else {
                if (csv.empty()) throw std::invalid_argument("plot ratio-csv needs --csv");
                emit_ratio_plot(csv, o.out);
            }
            std::cout << o.out << '\n';
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}
