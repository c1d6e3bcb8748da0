#include "divvar/variance.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "divvar/summation.hpp"

#ifndef DIVVAR_VERSION
#define DIVVAR_VERSION "dev"
#endif

namespace divvar {

namespace {

void check_args(int k, u64 d, double X) {
    if (k < 1 || k > kMaxTauK) throw std::invalid_argument("variance: k must lie in [1, 16]");
    if (d == 0) throw std::invalid_argument("variance: d must be positive");
    if (!(X >= 1.0) || !std::isfinite(X)) throw std::invalid_argument("variance: X must be finite and >= 1");
}

void check_budget(const WeightedRange& r, const VarianceOptions& opt) {
    if (r.size() > opt.sieve_budget) {
        std::ostringstream msg;
        msg << "variance: range of " << r.size() << " integers exceeds the sieve budget of " << opt.sieve_budget
            << " (estimated cost ~" << static_cast<double>(r.size()) / 5e7 << " core-seconds)";
        throw std::length_error(msg.str());
    }
}

void check_character_budget(const WeightedRange& r, u64 nchars, const VarianceOptions& opt) {
    const double cost = static_cast<double>(r.size()) * static_cast<double>(nchars);
    if (cost > opt.character_budget) {
        std::ostringstream msg;
        msg << "variance: character route needs " << cost << " character evaluations, above the budget of "
            << opt.character_budget << " (estimated ~" << cost / 2e8 << " core-seconds); use the direct route";
        throw std::length_error(msg.str());
    }
}

}  // namespace

std::string_view code_version() { return DIVVAR_VERSION; }

std::string_view to_string(CutoffKind c) { return c == CutoffKind::Sharp ? "sharp" : "smooth"; }

CutoffKind cutoff_from_string(std::string_view s) {
    if (s == "sharp") return CutoffKind::Sharp;
    if (s == "smooth") return CutoffKind::Smooth;
    throw std::invalid_argument("unknown cutoff '" + std::string(s) + "' (expected sharp or smooth)");
}

std::string_view to_string(GammaMethod m) {
    switch (m) {
        case GammaMethod::Simple: return "simple";
        case GammaMethod::Piecewise: return "piecewise";
        case GammaMethod::MonteCarlo: return "mc";
    }
    return "unknown";
}

GammaMethod gamma_method_from_string(std::string_view s) {
    if (s == "simple") return GammaMethod::Simple;
    if (s == "piecewise") return GammaMethod::Piecewise;
    if (s == "mc") return GammaMethod::MonteCarlo;
    throw std::invalid_argument("unknown gamma method '" + std::string(s) + "' (expected simple, piecewise or mc)");
}

WeightedRange make_range(double X, CutoffKind cutoff, const SmoothWeight& w) {
    return cutoff == CutoffKind::Sharp ? WeightedRange::sharp(X) : WeightedRange::smooth(X, w);
}

double variance_from_class_sums(const std::vector<double>& sums) {
    if (sums.empty()) return 0.0;
    KahanSum total;
    for (double s : sums) total.add(s);
    const double mean = total.value() / static_cast<double>(sums.size());
    KahanSum var;
    for (double s : sums) {
        const double dev = s - mean;
        var.add(dev * dev);
    }
    return var.value();
}

double variance_from_class_sums(const std::vector<KahanSum>& sums) {
    if (sums.empty()) return 0.0;
    KahanSum total;
    for (const auto& s : sums) total.merge(s);
    // Mean as a double-double m_hi + m_lo.
    const double t_hi = total.value();
    const double t_lo = total.compensation() - (t_hi - total.sum());
    const double n = static_cast<double>(sums.size());
    const double m_hi = t_hi / n;
    const double m_lo = (std::fma(-m_hi, n, t_hi) + t_lo) / n;
    KahanSum var;
    for (const auto& s : sums) {
        const double dev = ((s.sum() - m_hi) + s.compensation()) - m_lo;
        var.add(dev * dev);
    }
    return var.value();
}

double variance_direct(int k, u64 d, double X, CutoffKind cutoff, const VarianceOptions& opt) {
    check_args(k, d, X);
    const auto r = make_range(X, cutoff, opt.weight);
    check_budget(r, opt);
    const UnitIndex units(d);
    return variance_from_class_sums(kernels::omp::class_sums(k, units, r, opt.segment, opt.workers));
}

double variance_characters(int k, u64 d, double X, CutoffKind cutoff, const VarianceOptions& opt) {
    check_args(k, d, X);
    const auto r = make_range(X, cutoff, opt.weight);
    check_budget(r, opt);
    const auto g = character_group(d);
    check_character_budget(r, g->size(), opt);
    std::vector<DirichletCharacter> chars;
    chars.reserve(g->size());
    for (u64 i = 1; i < g->size(); ++i) chars.push_back(g->character(i));  // index 0 is principal
    const auto weighted = kernels::omp::weighted_tau(k, r, opt.segment, opt.workers);
    const auto sums = kernels::omp::character_sums(weighted, r.lo, chars, opt.workers);
    KahanSum acc;
    for (const auto& s : sums) acc.add(std::norm(s));
    return acc.value() / static_cast<double>(g->size());
}

double variance_primitive(int k, u64 d, double X, CutoffKind cutoff, const VarianceOptions& opt) {
    check_args(k, d, X);
    const auto r = make_range(X, cutoff, opt.weight);
    check_budget(r, opt);
    const auto f = factorize(d);
    check_character_budget(r, euler_phi(f), opt);
    const auto weighted = kernels::omp::weighted_tau(k, r, opt.segment, opt.workers);
    KahanSum acc;
    std::vector<double> masked(weighted.size());
    for (u64 q : divisors(f)) {
        if (q == 1) continue;
        const auto prims = enumerate_primitive(q);
        if (prims.empty()) continue;
        const u64 rest = d / q;
        for (std::size_t i = 0; i < weighted.size(); ++i) {
            masked[i] = gcd(r.lo + i, rest) == 1 ? weighted[i] : 0.0;
        }
        for (const auto& s : kernels::omp::character_sums(masked, r.lo, prims, opt.workers)) acc.add(std::norm(s));
    }
    return acc.value() / static_cast<double>(euler_phi(f));
}

MainTerm main_term(int k, u64 d, double c, GammaMethod method, const MainTermOptions& opt) {
    if (d == 0) throw std::invalid_argument("main_term: d must be positive");
    MainTerm m;
    m.method = method;
    switch (method) {
        case GammaMethod::Simple:
            if (!(c > k - 1 && c < k)) {
                throw std::domain_error("main_term: simple gamma_k needs k-1 < c < k; use --gamma-method piecewise or mc");
            }
            m.gamma = gamma_k_simple(k, c);
            break;
        case GammaMethod::Piecewise:
            if (k > 3) throw std::domain_error("main_term: piecewise gamma_k tables exist for k <= 3 only");
            m.gamma = gamma_piecewise_table(k).eval(c);
            break;
        case GammaMethod::MonteCarlo: {
            const auto g = gamma_k_mc(k, c, opt.samples, opt.seed, opt.workers);
            m.gamma = g.value;
            m.gamma_error = g.error_estimate;
            break;
        }
    }
    m.a_k_d = a_k_d(k, d, opt.prime_bound).value;
    const double logd = std::log(static_cast<double>(d));
    m.value = m.a_k_d * m.gamma * std::pow(static_cast<double>(d), c) * std::pow(logd, k * k - 1);
    return m;
}

double x_from_c(u64 d, double c) {
    const double X = std::pow(static_cast<double>(d), c);
    const double nearest = std::round(X);
    if (std::abs(X - nearest) <= 4.0 * std::numeric_limits<double>::epsilon() * nearest) return nearest;
    return X;
}

VarianceReport experiment(const ExperimentConfig& cfg) {
    const auto start = std::chrono::steady_clock::now();
    VarianceReport rep;
    rep.k = cfg.k;
    rep.d = cfg.d;
    rep.c = cfg.c;
    rep.X = x_from_c(cfg.d, cfg.c);
    rep.cutoff = cfg.cutoff;
    rep.weight_id = cfg.cutoff == CutoffKind::Smooth ? cfg.variance.weight.id() : "none";
    rep.gamma_method = cfg.gamma_method;
    rep.prime_bound = cfg.constants.prime_bound;
    rep.workers = cfg.variance.workers;
    rep.segment_size = cfg.variance.segment;
    rep.code_version = std::string(code_version());
    if (cfg.gamma_method == GammaMethod::MonteCarlo) {
        rep.samples = cfg.constants.samples;
        rep.seed = cfg.constants.seed;
    }

    const auto mt = main_term(cfg.k, cfg.d, cfg.c, cfg.gamma_method, cfg.constants);
    rep.main_term = mt.value;
    rep.a_k_d = mt.a_k_d;
    rep.gamma = mt.gamma;
    rep.gamma_error = mt.gamma_error;
    rep.variance = variance_direct(cfg.k, cfg.d, rep.X, cfg.cutoff, cfg.variance);
    rep.ratio = rep.main_term > 0.0 ? rep.variance / rep.main_term : std::numeric_limits<double>::quiet_NaN();
    rep.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return rep;
}

}  // namespace divvar
