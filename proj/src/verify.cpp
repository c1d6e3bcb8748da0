#include "divvar/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

#include "divvar/characters.hpp"
#include "divvar/constants.hpp"
#include "divvar/experiments.hpp"
#include "divvar/quadrature.hpp"
#include "divvar/specfun.hpp"
#include "divvar/variance.hpp"
#include "divvar/weights.hpp"

namespace divvar {

namespace {

using Checks = std::vector<VerifyCheck>;

void add(Checks& out, std::string name, double residual, double tol, std::string detail = {}) {
    const bool ok = std::isfinite(residual) && residual <= tol;
    out.push_back({std::move(name), residual, tol, ok, std::move(detail)});
}

void add_bool(Checks& out, std::string name, bool ok, std::string detail = {}) {
    out.push_back({std::move(name), ok ? 0.0 : 1.0, 0.0, ok, std::move(detail)});
}

double rel(double a, double b) {
    const double scale = std::max({std::abs(a), std::abs(b), 1e-300});
    return std::abs(a - b) / scale;
}

std::vector<u64> units_of(u64 d) {
    std::vector<u64> u;
    for (u64 a = 1; a <= d; ++a) {
        if (gcd(a % d, d) == 1) u.push_back(a % d);
    }
    return u;
}

// ---------------------------------------------------------------- orthogonality

Checks suite_orthogonality(const VerifyOptions& opt) {
    Checks out;

    double worst = 0.0;
    for (u64 d = 1; d <= 60; ++d) {
        const auto chars = enumerate_characters(d);
        const auto units = units_of(d);
        for (u64 m : units) {
            for (u64 n : units) {
                cplx s = 0.0;
                for (const auto& chi : chars) s += chi(static_cast<i64>(m)) * std::conj(chi(static_cast<i64>(n)));
                const double expect = m == n ? static_cast<double>(euler_phi(d)) : 0.0;
                worst = std::max(worst, std::abs(s - expect));
            }
        }
    }
    add(out, "full orthogonality, d <= 60", worst, 1e-9);

    std::mt19937_64 rng(opt.seed);
    worst = 0.0;
    for (u64 q = 1; q <= 100; ++q) {
        const auto units = units_of(q);
        std::uniform_int_distribution<std::size_t> pick(0, units.size() - 1);
        for (int i = 0; i < 20; ++i) {
            const i64 m = static_cast<i64>(units[pick(rng)]);
            const i64 n = static_cast<i64>(units[pick(rng)]);
            worst = std::max(worst, std::abs(primitive_orthogonality_brute(q, m, n) - primitive_orthogonality_sum(q, m, n)));
        }
    }
    add(out, "primitive orthogonality divisor formula vs brute force, q <= 100", worst, 1e-9);

    bool counts_ok = true;
    bool enum_ok = true;
    for (u64 d = 1; d <= 200; ++d) {
        u64 total = 0;
        for (u64 q : divisors(d)) total += phi_star(q);
        counts_ok = counts_ok && total == euler_phi(d);
        enum_ok = enum_ok && enumerate_primitive(d).size() == phi_star(d);
    }
    add_bool(out, "sum over q | d of phi*(q) = phi(d), d <= 200", counts_ok);
    add_bool(out, "primitive enumeration count = phi*(q), q <= 200", enum_ok);

    bool bijection = true;
    std::string first_bad;
    for (u64 d = 2; d <= 200 && bijection; ++d) {
        std::set<std::vector<u64>> seen;
        u64 count = 0;
        for (u64 q : divisors(d)) {
            if (q == 1) continue;
            for (const auto& chi1 : enumerate_primitive(q)) {
                const auto chi = induce(chi1, d);
                ++count;
                if (chi.is_principal() || chi.conductor() != q) bijection = false;
                seen.emplace(chi.exponents().begin(), chi.exponents().end());
                for (u64 n = 0; n < d && bijection; ++n) {
                    const cplx want = gcd(n, d) == 1 ? chi1(static_cast<i64>(n)) : cplx(0.0);
                    if (std::abs(chi(static_cast<i64>(n)) - want) > 1e-12) bijection = false;
                }
            }
        }
        if (count != euler_phi(d) - 1 || seen.size() != count) bijection = false;
        if (!bijection) first_bad = "d = " + std::to_string(d);
    }
    add_bool(out, "induction is a bijection onto nonprincipal characters, d <= 200", bijection, first_bad);

    bool parity_ok = true;
    for (u64 d = 1; d <= 100; ++d) {
        for (const auto& chi : enumerate_characters(d)) {
            const double expect = chi.parity() ? -1.0 : 1.0;
            parity_ok = parity_ok && std::abs(chi(-1) - expect) < 1e-12;
        }
    }
    add_bool(out, "chi(-1) = (-1)^a, d <= 100", parity_ok);

    bool group_ok = true, dlog_ok = true, values_ok = true, conductor_ok = true;
    double mult_worst = 0.0;
    for (u64 d = 1; d <= 200; ++d) {
        const auto g = character_group(d);
        u64 prod = 1;
        for (const auto& c : g->components()) prod *= c.order;
        group_ok = group_ok && prod == euler_phi(d);
        std::vector<u64> logs(g->components().size());
        for (u64 a = 0; a < d; ++a) {
            if (!g->logs(static_cast<i64>(a), logs)) continue;
            u64 back = 1 % d;
            for (std::size_t i = 0; i < logs.size(); ++i) {
                for (u64 e = 0; e < logs[i]; ++e) back = back * g->components()[i].generator % d;
            }
            dlog_ok = dlog_ok && back == a % d;
        }
        const auto chars = enumerate_characters(d);
        for (const auto& chi : chars) {
            values_ok = values_ok && std::abs(chi(1) - 1.0) < 1e-12;
            for (u64 n = 0; n < d; ++n) {
                const bool zero = std::abs(chi(static_cast<i64>(n))) < 1e-12;
                values_ok = values_ok && zero == (gcd(n, d) != 1);
            }
            conductor_ok = conductor_ok && d % chi.conductor() == 0 &&
                           chi.is_primitive() == (chi.conductor() == d);
            if (d <= 60) {
                for (u64 m = 1; m < d; ++m) {
                    for (u64 n = 1; n < d; ++n) {
                        if (gcd(m, d) != 1 || gcd(n, d) != 1) continue;
                        const cplx lhs = chi(static_cast<i64>(m * n));
                        const cplx rhs = chi(static_cast<i64>(m)) * chi(static_cast<i64>(n));
                        mult_worst = std::max(mult_worst, std::abs(lhs - rhs));
                    }
                }
            }
        }
    }
    add_bool(out, "component orders multiply to phi(d), d <= 200", group_ok);
    add_bool(out, "discrete logs round-trip, d <= 200", dlog_ok);
    add_bool(out, "chi(1) = 1 and chi(n) = 0 iff gcd(n, d) > 1, d <= 200", values_ok);
    add_bool(out, "conductor divides d; primitive iff conductor = d, d <= 200", conductor_ok);
    add(out, "chi(mn) = chi(m) chi(n) on units, d <= 60", mult_worst, 1e-12);
    return out;
}

// ---------------------------------------------------------------- gauss

Checks suite_gauss(const VerifyOptions&) {
    Checks out;
    double worst = 0.0;
    for (u64 q = 1; q <= 50; ++q) {
        for (const auto& chi : enumerate_primitive(q)) {
            worst = std::max(worst, std::abs(std::norm(gauss_sum(chi)) - static_cast<double>(q)));
        }
    }
    add(out, "|tau(chi)|^2 = q for primitive chi, q <= 50", worst, 1e-10);

    worst = 0.0;
    for (auto [q, a] : {std::pair{3, 1}, {4, 1}, {5, 0}}) {
        for (double t : {0.0, 1.0, 5.0, 20.0}) {
            const double m = gamma_factor_modulus({0.5, t}, GammaFactorSpec{static_cast<double>(q), a, 1});
            worst = std::max(worst, std::abs(m - 1.0));
        }
    }
    add(out, "|gamma(1/2 + it, chi)| = 1 on (q, a) x t samples", worst, 1e-11);
    return out;
}

// ---------------------------------------------------------------- magic

Checks suite_magic(const VerifyOptions&) {
    Checks out;
    const auto primes = primes_up_to(29);
    double worst = 0.0;
    int count = 0;
    for (int k = 2; k <= 6; ++k) {
        for (u64 p : primes) {
            for (double s : {1.0, 2.0}) {
                worst = std::max(worst, rel(local_factor(k, p, s), local_factor_series(k, p, s)));
                ++count;
            }
        }
    }
    add(out, "local factor closed form vs series (" + std::to_string(count) + " cases)", worst, 1e-12);

    bool exact_ok = true;
    for (int k = 2; k <= 6; ++k) {
        for (u64 p : primes) {
            const double ex = static_cast<double>(local_factor_exact(k, p));
            exact_ok = exact_ok && rel(ex, local_factor(k, p, 1.0)) <= 1e-13;
        }
    }
    add_bool(out, "exact rational local factor agrees with closed form at s = 1", exact_ok);
    return out;
}

// ---------------------------------------------------------------- gamma3

Checks suite_gamma3(const VerifyOptions&) {
    Checks out;
    const auto& t = gamma_piecewise_table(3);
    add_bool(out, "continuity at c = 1 (exact)", t.eval_branch(0, 1) == t.eval_branch(1, 1));
    add_bool(out, "continuity at c = 2 (exact)", t.eval_branch(1, 2) == t.eval_branch(2, 2));
    const BigRational nine_fact_integral = BigRational(factorial(9)) * t.integral();
    add_bool(out, "9! * integral of gamma_3 over [0, 3] = 42", nine_fact_integral == 42,
             "value " + nine_fact_integral.str());

    bool simple_ok = true;
    for (int j = 0; j < 64; ++j) {
        const BigRational c = BigRational(2) + BigRational(j, 64);
        simple_ok = simple_ok && gamma_k_simple_exact(3, c) == t.eval_branch(2, c);
    }
    add_bool(out, "simple closed form equals third branch on [2, 3)", simple_ok);

    const BigRational inv8(1, 40320);
    const int middle[9] = {-927, 4392, -8484, 8568, -4830, 1512, -252, 24, -2};
    bool verbatim = t.coeffs.size() == 3 && t.coeffs[0].size() == 9 && t.coeffs[0][8] == inv8;
    for (int j = 0; j < 8 && verbatim; ++j) verbatim = t.coeffs[0][j] == 0;
    for (int j = 0; j < 9 && verbatim; ++j) verbatim = t.coeffs[1][j] == BigRational(middle[j]) * inv8;
    for (int j = 0; j <= 8 && verbatim; ++j) {
        const BigRational c(j, 3);
        const BigRational d = 3 - c;
        BigRational p = 1;
        for (int i = 0; i < 8; ++i) p *= d;
        verbatim = t.eval_branch(2, c) == p * inv8;
    }
    add_bool(out, "k = 3 table matches the published branches", verbatim);
    return out;
}

// ---------------------------------------------------------------- moment

Checks suite_moment(const VerifyOptions& opt) {
    Checks out;
    add_bool(out, "g_1 = 1", g_k(1) == 1);
    add_bool(out, "g_2 = 2", g_k(2) == 2);
    add_bool(out, "g_3 = 42", g_k(3) == 42);
    for (int k = 1; k <= 3; ++k) {
        const auto m = gamma_integral_check(k, opt.samples, opt.seed);
        add_bool(out, "(k^2)! integral of gamma_" + std::to_string(k) + " = g_" + std::to_string(k) + " (exact)",
                 m.exact && m.exact_residual == 0);
    }
    bool barnes_ok = true;
    for (int k = 1; k <= 8; ++k) {
        const BigRational g = g_k(k);
        const BigInt gg = barnes_g(k + 1);
        // g_k G(2k+1) = (k^2)! G(k+1)^2 and g_k is an integer.
        barnes_ok = barnes_ok && denominator(g) == 1 &&
                    BigRational(barnes_g(2 * k + 1)) * g == BigRational(factorial(k * k) * gg * gg);
    }
    add_bool(out, "g_k G(2k+1) = (k^2)! G(k+1)^2 with g_k integral, k <= 8", barnes_ok);
    return out;
}

// ---------------------------------------------------------------- variance-equivalence

Checks suite_variance_equivalence(const VerifyOptions& opt) {
    Checks out;
    VarianceOptions vo;
    vo.workers = opt.workers;
    double worst = 0.0;
    std::string where;
    for (int k : {2, 3}) {
        for (u64 d : {4, 12, 35, 60, 101}) {
            for (double X : {1e3, 1e4}) {
                for (auto cut : {CutoffKind::Sharp, CutoffKind::Smooth}) {
                    const double a = variance_direct(k, d, X, cut, vo);
                    const double b = variance_characters(k, d, X, cut, vo);
                    const double c = variance_primitive(k, d, X, cut, vo);
                    const double r = std::max(rel(a, b), rel(a, c));
                    if (r > worst) {
                        worst = r;
                        std::ostringstream w;
                        w << "k=" << k << " d=" << d << " X=" << X << ' ' << to_string(cut);
                        where = w.str();
                    }
                }
            }
        }
    }
    add(out, "direct = characters = primitive on the 40-point grid", worst, 1e-9, "worst at " + where);

    VarianceOptions sharp = vo;
    add_bool(out, "hand oracle k=2 d=4 X=10 sharp: direct = 2",
             variance_direct(2, 4, 10, CutoffKind::Sharp, sharp) == 2.0);
    add_bool(out, "hand oracle k=2 d=4 X=10 sharp: characters = 2",
             std::abs(variance_characters(2, 4, 10, CutoffKind::Sharp, sharp) - 2.0) < 1e-12);
    return out;
}

// ---------------------------------------------------------------- convolution-trend

Checks suite_convolution_trend(const VerifyOptions&) {
    Checks out;
    for (int k : {2, 3}) {
        std::vector<double> gaps;
        std::ostringstream detail;
        for (u64 d : {101, 1009, 10007}) {
            gaps.push_back(convolution_compare(k, d).relative_gap);
            detail << "d=" << d << ":" << gaps.back() << ' ';
        }
        add_bool(out, "gap strictly decreasing along d = 101, 1009, 10007 for k = " + std::to_string(k),
                 gaps[0] > gaps[1] && gaps[1] > gaps[2], detail.str());
    }
    const auto one = convolution_compare(2, 1);
    add(out, "d = 1 gives identical sides", one.relative_gap, 0.0);
    return out;
}

// ---------------------------------------------------------------- mellin-decay

Checks suite_mellin_decay(const VerifyOptions&) {
    Checks out;
    const auto w = SmoothWeight::bump();

    const auto r3 = mellin_decay_check(w, 3, {10, 20, 40});
    double lo = INFINITY, hi = 0.0;
    for (const auto& s : r3.samples) {
        if (s.sigma != 0.5) continue;
        lo = std::min(lo, s.scaled);
        hi = std::max(hi, s.scaled);
    }
    add(out, "(1+t)^3 |M[w](1/2+it)| within a factor 10 over t = 10, 20, 40", hi / lo, 10.0);

    const double m10 = std::abs(mellin_numeric(w, {0.5, 10.0}).value);
    const double m20 = std::abs(mellin_numeric(w, {0.5, 20.0}).value);
    const double m40 = std::abs(mellin_numeric(w, {0.5, 40.0}).value);
    add_bool(out, "|M[w](1/2+10i)| / |M[w](1/2+20i)| >= 2", m10 / m20 >= 2.0, std::to_string(m10 / m20));
    add_bool(out, "|M[w](1/2+40i)| < |M[w](1/2+10i)|", m40 < m10);

    const auto r0 = mellin_decay_check(w, 0, {0, 10, 20, 40});
    const double l1 = quad::tanh_sinh<double>([&](double y) { return w(y); }, 1.0, 2.0, 1e-14).value;
    add_bool(out, "ell = 0 bound <= integral of |w| (at sigma = 1)", [&] {
        for (const auto& s : r0.samples) {
            if (s.sigma == 0.5 || s.sigma == 2.0 || s.sigma == -1.0) {
                // |x^(sigma-1)| <= max(1, 2^(sigma-1)) on [1, 2].
                const double bound = l1 * std::max(1.0, std::pow(2.0, s.sigma - 1.0));
                if (s.abs_value > bound * (1 + 1e-12)) return false;
            }
        }
        return true;
    }());

    const auto p = parseval_check(w);
    add(out, "Parseval residual, |t| <= 200", p.residual, 1e-6);
    add_bool(out, "Parseval truncation tail controlled", p.truncation_ok);
    const auto p2 = parseval_check(w.scaled(2.0));
    add(out, "Parseval with 2w: lhs = 4 (residual)", std::abs(p2.lhs - 4.0 * p.lhs), 1e-6);
    const auto raw = SmoothWeight::raw_bump();
    const auto pr = parseval_check(raw);
    add(out, "Parseval with unnormalised bump", pr.residual / pr.rhs, 1e-6,
        "rhs = " + std::to_string(pr.rhs));
    return out;
}

// ---------------------------------------------------------------- weights (extra)

Checks suite_weights(const VerifyOptions&) {
    Checks out;
    const auto w = SmoothWeight::bump();
    bool support = true;
    for (double y : {-1.0, 0.0, 0.5, 1.0, std::nextafter(1.0, 0.0), 2.0, std::nextafter(2.0, 3.0), 3.0, 1e9}) {
        support = support && w(y) == 0.0;
    }
    add_bool(out, "w vanishes exactly outside (1, 2)", support);
    add(out, "integral of w^2 = 1", std::abs(w.l2_norm_squared() - 1.0), 1e-10);

    const double raw = quad::tanh_sinh<double>(
                           [](double y) { return std::exp(-2.0 / ((y - 1.0) * (2.0 - y))); }, 1.0, 2.0, 1e-15)
                           .value;
    add(out, "w(1.5) = C exp(-4)", rel(w(1.5), std::exp(-4.0) / std::sqrt(raw)), 1e-12);

    double worst = 0.0;
    bool real_pos = true;
    for (std::complex<double> s : {std::complex<double>(0.5, 3.0), {2.0, -7.0}, {0.5, 30.0}, {-1.0, 60.0}}) {
        const auto a = mellin_numeric(w, s, 1e-8);
        const auto b = mellin_numeric(w, s, 5e-9);
        worst = std::max(worst, std::abs(a.value - b.value) / std::max(a.error, 1e-16));
    }
    add(out, "halving tol moves the value by at most the earlier error estimate", worst, 1.0);
    for (double s : {1.0, 1.5, 2.0, 5.0}) {
        const auto m = mellin_numeric(w, {s, 0.0});
        real_pos = real_pos && m.value.imag() == 0.0 && m.value.real() > 0.0;
    }
    add_bool(out, "M[w](s) real and positive for real s >= 1", real_pos);
    const auto a = mellin_numeric(w, {1.0, 0.0}).value;
    const auto b = mellin_numeric(w, {1.0, 1e-9}).value;
    add(out, "continuity: M[w](1) vs M[w](1 + 1e-9 i)", std::abs(a - b), 1e-8);
    bool err_ok = true;
    for (double t : {0.0, 10.0, 45.0, 80.0, 150.0}) {
        const auto m = mellin_numeric(w, {0.5, t}, 1e-10);
        err_ok = err_ok && m.converged && m.error <= 1e-10;
    }
    add_bool(out, "Mellin error estimates within the requested tolerance", err_ok);
    return out;
}

// ---------------------------------------------------------------- arith (extra)

Checks suite_arith(const VerifyOptions& opt) {
    Checks out;
    std::mt19937_64 rng(opt.seed);

    bool fact_ok = true;
    std::uniform_int_distribution<u64> big(1, kMaxFactorizable);
    for (int i = 0; i < 200; ++i) {
        const u64 n = i < 100 ? big(rng) : big(rng) % 1'000'000 + 1;
        const auto f = factorize(n);
        fact_ok = fact_ok && f.product() == n;
        for (std::size_t j = 0; j < f.factors.size(); ++j) {
            fact_ok = fact_ok && f.factors[j].exponent >= 1 && is_prime(f.factors[j].prime);
            if (j) fact_ok = fact_ok && f.factors[j - 1].prime < f.factors[j].prime;
        }
    }
    add_bool(out, "factorizations multiply back, primes increasing", fact_ok);

    bool mult_ok = true;
    std::uniform_int_distribution<u64> small(1, 1000);
    for (int k : {2, 3, 4}) {
        for (int i = 0; i < 500; ++i) {
            const u64 m = small(rng), n = small(rng);
            if (gcd(m, n) != 1) continue;
            mult_ok = mult_ok && tau_k_of(k, m * n) == tau_k_of(k, m) * tau_k_of(k, n);
        }
    }
    add_bool(out, "tau_k multiplicative on coprime samples, k = 2, 3, 4", mult_ok);

    bool sieve_ok = true;
    for (int k : {2, 3, 4}) {
        const auto seg = tau_k_segment(k, 1, 100'001);
        for (u64 n = 1; n <= 100'000; ++n) sieve_ok = sieve_ok && seg[n] == tau_k_of(k, n) && seg[n] >= 1;
    }
    add_bool(out, "sieve = closed form on [1, 1e5], k = 2, 3, 4", sieve_ok);

    bool rec_ok = true;
    for (int k = 2; k <= 5; ++k) {
        const auto prev = tau_k_segment(k - 1, 1, 10'001);
        const auto cur = tau_k_segment(k, 1, 10'001);
        std::vector<u64> conv(10'001, 0);
        for (u64 a = 1; a <= 10'000; ++a) {
            for (u64 b = a; b <= 10'000; b += a) conv[b] += prev[a];
        }
        for (u64 n = 1; n <= 10'000; ++n) rec_ok = rec_ok && conv[n] == cur[n];
    }
    add_bool(out, "tau_k = tau_{k-1} * 1 on n <= 1e4, k = 2..5", rec_ok);

    bool seg_ok = true;
    const auto whole = tau_k_segment(3, 1, 100'001, 1 << 17);
    for (std::size_t step : {std::size_t{997}, std::size_t{4096}, std::size_t{65'536}}) {
        TauSieve sieve(3, 100'000, step);
        for (u64 lo = 1; lo <= 100'000; lo += step) {
            const u64 hi = std::min<u64>(lo + step, 100'001);
            const auto part = sieve.segment(lo, hi);
            for (u64 n = lo; n < hi; ++n) seg_ok = seg_ok && part[n] == whole[n];
        }
    }
    add_bool(out, "segmentation independence on [1, 1e5]", seg_ok);

    // tau_3(n) / sqrt(n) peaks at 11.4 (n = 5040) and is still >= 1 at n = 999936,
    // so the bound is checked as decay of dyadic block maxima past the peak.
    TauSieve sieve(3, u64{1} << 20, u64{1} << 20);
    const auto g = sieve.segment(1, (u64{1} << 20) + 1);
    std::vector<double> block_max;
    for (int j = 14; j <= 20; ++j) {
        double m = 0.0;
        for (u64 n = (u64{1} << (j - 1)) + 1; n <= (u64{1} << j); ++n) {
            m = std::max(m, static_cast<double>(g[n]) / std::sqrt(static_cast<double>(n)));
        }
        block_max.push_back(m);
    }
    bool decays = true;
    std::ostringstream gd;
    for (std::size_t i = 0; i < block_max.size(); ++i) {
        gd << block_max[i] << ' ';
        if (i) decays = decays && block_max[i] < block_max[i - 1];
    }
    add_bool(out, "max of tau_3(n) / sqrt(n) over (2^(j-1), 2^j] decreases, j = 14..20", decays, gd.str());

    bool phi_ok = true;
    for (u64 q = 1; q <= 500; ++q) {
        const double conv = dirichlet_convolve([](u64 u) { return double(moebius(u)); },
                                               [](u64 v) { return double(euler_phi(v)); }, q);
        phi_ok = phi_ok && conv == static_cast<double>(phi_star(q));
    }
    add_bool(out, "phi* = mu * phi, q <= 500", phi_ok);
    return out;
}

// ---------------------------------------------------------------- specfun (extra)

// log Gamma by shifting to Re z >= 20 and summing the Stirling series.
std::complex<double> stirling_log_gamma(std::complex<double> z) {
    static const double bern[] = {1.0 / 6,       -1.0 / 30,        1.0 / 42,       -1.0 / 30,
                                  5.0 / 66,      -691.0 / 2730,    7.0 / 6,        -3617.0 / 510,
                                  43867.0 / 798, -174611.0 / 330};
    std::complex<double> shift = 0.0;
    while (z.real() < 20.0) {
        shift += std::log(z);
        z += 1.0;
    }
    std::complex<double> s = (z - 0.5) * std::log(z) - z + 0.5 * std::log(2.0 * std::numbers::pi);
    std::complex<double> zp = z;
    const auto z2 = z * z;
    for (int j = 1; j <= 10; ++j) {
        s += bern[j - 1] / (2.0 * j * (2.0 * j - 1.0) * zp);
        zp *= z2;
    }
    return s - shift;
}

Checks suite_specfun(const VerifyOptions& opt) {
    Checks out;
    std::mt19937_64 rng(opt.seed);
    std::uniform_real_distribution<double> sig(1.0, 3.0), tt(-100.0, 100.0);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        const std::complex<double> s(sig(rng), tt(rng));
        const auto a = log_gamma(s);
        const auto b = stirling_log_gamma(s);
        // Compare exp of the difference so the branch of Im does not matter.
        worst = std::max(worst, std::abs(std::exp(a - b) - 1.0));
    }
    add(out, "log_gamma vs shifted Stirling series, 100 strip points", worst, 1e-11);

    const std::complex<double> s(3.7, 2.1);
    add(out, "log_gamma recurrence at 3.7 + 2.1i",
        std::abs(std::exp(log_gamma(s + 1.0) - log_gamma(s) - std::log(s)) - 1.0), 1e-12);
    add(out, "log_gamma(1/2) = log sqrt(pi)", std::abs(log_gamma(0.5) - 0.5 * std::log(std::numbers::pi)), 1e-14);
    add(out, "|gamma(2)| with q = pi, a = 0", rel(gamma_factor_modulus(2.0, {std::numbers::pi, 0, 1}),
                                                     0.5 / std::sqrt(std::numbers::pi)), 1e-12);
    double growth = 0.0;
    for (int k = 1; k <= 3; ++k) {
        const double a = gamma_factor_modulus(2.0, {5.0, 0, k});
        const double b = gamma_factor_modulus(2.0, {10.0, 0, k});
        growth = std::max(growth, rel(b / a, std::pow(2.0, 1.5 * k)));
    }
    add(out, "doubling q at sigma = 2 scales by 2^(3k/2)", growth, 1e-12);
    add_bool(out, "G(2) = 1, G(4) = 2, G(5) = 12", barnes_g(2) == 1 && barnes_g(4) == 2 && barnes_g(5) == 12);
    return out;
}

// ---------------------------------------------------------------- constants (extra)

Checks suite_constants(const VerifyOptions& opt) {
    Checks out;
    add(out, "a_2 at prime bound 1e6 vs 6/pi^2", std::abs(a_k_value(2).value - 6.0 / (std::numbers::pi * std::numbers::pi)),
        5e-7);

    std::mt19937_64 rng(opt.seed);
    std::uniform_int_distribution<u64> pick(2, 5000);
    double worst = 0.0;
    int pairs = 0;
    while (pairs < 50) {
        const u64 a = pick(rng), b = pick(rng);
        if (gcd(a, b) != 1) continue;
        ++pairs;
        const int k = 2 + pairs % 3;
        const double lhs = a_k_d(k, a * b).value * a_k_value(k).value;
        const double rhs = a_k_d(k, a).value * a_k_d(k, b).value;
        worst = std::max(worst, rel(lhs, rhs));
    }
    add(out, "a_k(d1 d2) a_k = a_k(d1) a_k(d2), 50 coprime pairs", worst, 1e-12);

    bool tail_ok = true;
    for (int k : {2, 3}) {
        u64 bound = 100'000;
        auto prev = a_k_value(k, bound);
        for (int i = 0; i < 3; ++i) {
            bound *= 2;
            const auto next = a_k_value(k, bound);
            tail_ok = tail_ok && next.error_estimate < prev.error_estimate &&
                      std::abs(next.value - prev.value) < prev.error_estimate && prev.error_estimate >= 0 &&
                      std::isfinite(prev.error_estimate);
            prev = next;
        }
    }
    add_bool(out, "a_k error estimate shrinks as the prime bound doubles and covers the change", tail_ok);

    bool mc_ok = true;
    std::ostringstream detail;
    for (double c : {2.1, 2.5, 2.9}) {
        const auto v = gamma_k_mc(3, c, opt.samples, opt.seed, opt.workers);
        const double want = gamma_k_simple(3, c);
        const double z = std::abs(v.value - want) / v.error_estimate;
        detail << "c=" << c << " z=" << z << ' ';
        mc_ok = mc_ok && z <= 3.0 && v.method == ConstantMethod::MonteCarlo && v.samples == opt.samples &&
                v.seed == opt.seed;
        mc_ok = mc_ok && std::abs(gamma_3_piecewise(c) - want) <= 1e-15 * want;
    }
    add_bool(out, "Monte Carlo gamma_3 within 3 standard errors of the closed form", mc_ok, detail.str());
    return out;
}

// ---------------------------------------------------------------- variance properties (extra)

Checks suite_variance_properties(const VerifyOptions&) {
    Checks out;
    bool nonneg = true;
    for (u64 d : {2, 3, 7, 30, 97}) {
        for (auto cut : {CutoffKind::Sharp, CutoffKind::Smooth}) {
            nonneg = nonneg && variance_direct(3, d, 5000, cut) >= 0.0;
        }
    }
    add_bool(out, "variance >= 0", nonneg);
    add_bool(out, "variance = 0 when d = 1",
             variance_direct(3, 1, 5000, CutoffKind::Sharp) == 0.0 && variance_direct(3, 1, 5000, CutoffKind::Smooth) == 0.0);

    // Smooth sums over [1, 3X) with tau replaced by junk where w(n/X) = 0.
    const double X = 3000.0;
    const u64 d = 35;
    const auto w = SmoothWeight::bump();
    const UnitIndex units(d);
    std::vector<KahanSum> cls(units.units.size());
    for (u64 n = 1; n < 3 * static_cast<u64>(X); ++n) {
        const double omega = w(static_cast<double>(n) / X);
        const double value = omega == 0.0 ? 1e6 + static_cast<double>(n) : static_cast<double>(tau_k_of(3, n));
        const auto idx = units.index[n % d];
        if (idx >= 0 && omega != 0.0) cls[static_cast<std::size_t>(idx)].add(value * omega);
    }
    std::vector<double> sums;
    for (const auto& k : cls) sums.push_back(k.value());
    add(out, "smooth variance ignores tau outside (X, 2X)",
        rel(variance_from_class_sums(sums), variance_direct(3, d, X, CutoffKind::Smooth)), 1e-12);

    bool threads = true;
    for (auto cut : {CutoffKind::Sharp, CutoffKind::Smooth}) {
        VarianceOptions o1, o2, o8;
        o1.workers = 1;
        o2.workers = 2;
        o8.workers = 8;
        o1.segment = o2.segment = o8.segment = 1 << 14;
        const double a = variance_direct(3, 101, 2e5, cut, o1);
        threads = threads && a == variance_direct(3, 101, 2e5, cut, o2) && a == variance_direct(3, 101, 2e5, cut, o8);
    }
    add_bool(out, "identical variance for 1, 2 and 8 workers", threads);

    const double x = x_from_c(101, 2.5);
    add(out, "X = d^c within 1 ulp", std::abs(x - std::pow(101.0, 2.5)) / std::pow(101.0, 2.5),
        std::numeric_limits<double>::epsilon());
    return out;
}

// ---------------------------------------------------------------- records (extra)

Checks suite_records(const VerifyOptions&) {
    Checks out;
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-1e12, 1e12);
    bool csv_ok = true;
    for (int i = 0; i < 200; ++i) {
        CsvRow row{static_cast<int>(rng() % 16 + 1), rng() % 100000, u(rng), u(rng), i % 2 ? "sharp" : "smooth",
                   u(rng),  u(rng),   u(rng), "mc",   std::ldexp(u(rng), -60)};
        const auto back = parse_csv_row(format_csv_row(row));
        csv_ok = csv_ok && back.k == row.k && back.d == row.d && back.c == row.c && back.X == row.X &&
                 back.cutoff == row.cutoff && back.variance == row.variance && back.main_term == row.main_term &&
                 back.ratio == row.ratio && back.gamma_method == row.gamma_method && back.runtime_s == row.runtime_s;
    }
    add_bool(out, "CSV parse(emit(x)) = x, 200 random rows", csv_ok);

    VarianceReport r;
    r.k = 3;
    r.d = 101;
    r.c = 2.5;
    r.X = x_from_c(101, 2.5);
    r.variance = 1.0 / 3.0;
    r.main_term = std::sqrt(2.0);
    r.ratio = r.variance / r.main_term;
    r.gamma_method = GammaMethod::MonteCarlo;
    r.samples = 12345;
    r.seed = 99;
    r.workers = 8;
    r.code_version = "x";
    const auto rec = make_record(r);
    const auto back = variance_report_from_json(nlohmann::json::parse(rec.dump()).at("payload"));
    add_bool(out, "variance record JSON round-trip with schema version",
             back == r && rec.at("schema_version") == kSchemaVersion && rec.contains("timestamp"));
    const auto cv = gamma_k_mc(2, 0.5, 10'000, 5, 1);
    add_bool(out, "constant record JSON round-trip carries seed, samples, workers",
             constant_value_from_json(nlohmann::json::parse(make_record(cv).dump()).at("payload")) == cv &&
                 cv.samples == 10'000 && cv.seed == 5 && cv.workers == 1);
    return out;
}

using SuiteFn = Checks (*)(const VerifyOptions&);

const std::vector<std::pair<std::string, SuiteFn>>& registry() {
    static const std::vector<std::pair<std::string, SuiteFn>> r = {
        {"orthogonality", suite_orthogonality},
        {"gauss", suite_gauss},
        {"magic", suite_magic},
        {"gamma3", suite_gamma3},
        {"moment", suite_moment},
        {"variance-equivalence", suite_variance_equivalence},
        {"convolution-trend", suite_convolution_trend},
        {"mellin-decay", suite_mellin_decay},
        {"arith", suite_arith},
        {"weights", suite_weights},
        {"specfun", suite_specfun},
        {"constants", suite_constants},
        {"variance-properties", suite_variance_properties},
        {"records", suite_records},
    };
    return r;
}

}  // namespace

bool VerifyReport::passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const VerifyCheck& c) { return c.passed; });
}

nlohmann::json VerifyReport::to_json() const {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& c : checks) {
        nlohmann::json j{{"name", c.name}, {"residual", c.residual}, {"tolerance", c.tolerance}, {"passed", c.passed}};
        if (!c.detail.empty()) j["detail"] = c.detail;
        arr.push_back(std::move(j));
    }
    return {{"suite", suite}, {"passed", passed()}, {"seconds", seconds}, {"checks", std::move(arr)}};
}

const std::vector<std::string>& verify_suite_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> n;
        for (const auto& [name, fn] : registry()) n.push_back(name);
        return n;
    }();
    return names;
}

VerifyReport run_verify(std::string_view suite, const VerifyOptions& opt) {
    for (const auto& [name, fn] : registry()) {
        if (name != suite) continue;
        const auto start = std::chrono::steady_clock::now();
        VerifyReport rep;
        rep.suite = name;
        rep.checks = fn(opt);
        rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        return rep;
    }
    std::string msg = "unknown verify suite '" + std::string(suite) + "'; valid suites:";
    for (const auto& n : verify_suite_names()) msg += " " + n;
    throw std::invalid_argument(msg);
}

}  // namespace divvar
