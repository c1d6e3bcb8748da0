#include "divvar/constants.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>
#include <string>

#include "divvar/kernels.hpp"
#include "divvar/summation.hpp"

namespace divvar {

namespace {

void check_local_k(int k) {
    if (k < 1 || k > kMaxTauK) throw std::invalid_argument("local_factor: k must lie in [1, 16]");
}

void check_prime(u64 p) {
    if (!is_prime(p)) throw std::invalid_argument("local_factor: " + std::to_string(p) + " is not prime");
}

// log of the local factor at s = 1, written as two log1p terms that cancel to O(p^-2).
double log_euler_factor(int k, u64 p) {
    const double x = 1.0 / static_cast<double>(p);
    double tail = 0.0, xj = 1.0;
    for (int j = 1; j < k; ++j) {
        xj *= x;
        const double b = static_cast<double>(binomial(static_cast<u64>(k - 1), static_cast<u64>(j)));
        tail += b * b * xj;
    }
    const double m = static_cast<double>((k - 1) * (k - 1));
    return m * std::log1p(-x) + std::log1p(tail);
}

const std::vector<u64>& primes_cached(u64 bound) {
    static std::mutex mu;
    static std::map<u64, std::vector<u64>> cache;
    std::lock_guard lock(mu);
    auto it = cache.find(bound);
    if (it == cache.end()) it = cache.emplace(bound, primes_up_to(bound)).first;
    return it->second;
}

BigRational rational_pow(const BigRational& b, int e) {
    BigRational r = 1;
    for (int i = 0; i < e; ++i) r *= b;
    return r;
}

std::vector<BigRational> expand_shifted_power(const BigRational& a, int n) {
    // (a - c)^n in ascending powers of c.
    std::vector<BigRational> out(n + 1);
    for (int j = 0; j <= n; ++j) {
        BigRational term = BigRational(binomial(static_cast<u64>(n), static_cast<u64>(j))) * rational_pow(a, n - j);
        if (j % 2) term = -term;
        out[j] = term;
    }
    return out;
}

PiecewisePolynomial build_table(int k) {
    PiecewisePolynomial p;
    switch (k) {
        case 1:
            p.breaks = {0, 1};
            p.coeffs = {{BigRational(1)}};
            break;
        case 2: {
            const BigRational sixth(1, 6);
            p.breaks = {0, 1, 2};
            p.coeffs.push_back({0, 0, 0, sixth});
            auto second = expand_shifted_power(2, 3);
            for (auto& c : second) c *= sixth;
            p.coeffs.push_back(second);
            break;
        }
        case 3: {
            const BigRational inv8(1, 40320);
            p.breaks = {0, 1, 2, 3};
            std::vector<BigRational> first(9, 0);
            first[8] = inv8;
            p.coeffs.push_back(first);
            const int middle[9] = {-927, 4392, -8484, 8568, -4830, 1512, -252, 24, -2};
            std::vector<BigRational> second(9);
            for (int j = 0; j < 9; ++j) second[j] = BigRational(middle[j]) * inv8;
            p.coeffs.push_back(second);
            auto third = expand_shifted_power(3, 8);
            for (auto& c : third) c *= inv8;
            p.coeffs.push_back(third);
            break;
        }
        default:
            throw std::invalid_argument("gamma_piecewise_table: exact tables exist for k in {1, 2, 3} only");
    }
    return p;
}

}  // namespace

std::string_view to_string(ConstantMethod m) {
    switch (m) {
        case ConstantMethod::EulerProduct: return "euler-product";
        case ConstantMethod::ClosedForm: return "closed-form";
        case ConstantMethod::MonteCarlo: return "monte-carlo";
        case ConstantMethod::Piecewise: return "piecewise";
        case ConstantMethod::Quadrature: return "quadrature";
    }
    return "unknown";
}

ConstantMethod constant_method_from_string(std::string_view s) {
    for (auto m : {ConstantMethod::EulerProduct, ConstantMethod::ClosedForm, ConstantMethod::MonteCarlo,
                   ConstantMethod::Piecewise, ConstantMethod::Quadrature}) {
        if (to_string(m) == s) return m;
    }
    throw std::invalid_argument("unknown constant method: " + std::string(s));
}

double local_factor(int k, u64 p, double s) {
    check_local_k(k);
    check_prime(p);
    const double x = std::pow(static_cast<double>(p), -s);
    double poly = 0.0, xj = 1.0;
    for (int j = 0; j < k; ++j) {
        const double b = static_cast<double>(binomial(static_cast<u64>(k - 1), static_cast<u64>(j)));
        poly += b * b * xj;
        xj *= x;
    }
    return std::pow(1.0 - x, -(2.0 * k - 1.0)) * poly;
}

double local_factor_series(int k, u64 p, double s) {
    check_local_k(k);
    check_prime(p);
    const double x = std::pow(static_cast<double>(p), -s);
    KahanSum acc;
    double xj = 1.0;
    double running = 0.0;
    for (int j = 0; j < 10000; ++j) {
        // C(k+j-1, k-1) as a double; exact integers are not needed here.
        double b = 1.0;
        for (int i = 1; i < k; ++i) b = b * (j + i) / i;
        const double term = b * b * xj;
        acc.add(term);
        running = acc.value();
        if (j > 2 * k && term < 1e-18 * running) break;
        xj *= x;
    }
    return running;
}

BigRational local_factor_exact(int k, u64 p) {
    check_local_k(k);
    check_prime(p);
    const BigRational x(1, p);
    BigRational poly = 0, xj = 1;
    for (int j = 0; j < k; ++j) {
        const BigRational b(binomial(static_cast<u64>(k - 1), static_cast<u64>(j)));
        poly += b * b * xj;
        xj *= x;
    }
    return rational_pow(BigRational(p, p - 1), 2 * k - 1) * poly;
}

ConstantValue a_k_value(int k, u64 prime_bound) {
    check_local_k(k);
    if (prime_bound < 1000) throw std::invalid_argument("a_k_value: prime_bound must be at least 10^3");
    static std::mutex mu;
    static std::map<std::pair<int, u64>, ConstantValue> cache;
    {
        std::lock_guard lock(mu);
        if (auto it = cache.find({k, prime_bound}); it != cache.end()) return it->second;
    }
    ConstantValue v;
    v.name = "a_k";
    v.k = k;
    v.method = ConstantMethod::EulerProduct;
    v.prime_bound = prime_bound;
    if (k == 1) {
        v.value = 1.0;
        v.error_estimate = 0.0;
    } else {
        KahanSum log_sum;
        for (u64 p : primes_cached(prime_bound)) log_sum.add(log_euler_factor(k, p));
        v.value = std::exp(log_sum.value());
        // |log of omitted product| <= k^4 sum_{p > B} p^-2 < k^4 / B.
        const double k4 = std::pow(static_cast<double>(k), 4);
        v.error_estimate = v.value * std::expm1(k4 / static_cast<double>(prime_bound));
    }
    std::lock_guard lock(mu);
    cache.emplace(std::make_pair(k, prime_bound), v);
    return v;
}

ConstantValue a_k_d(int k, u64 d, u64 prime_bound) {
    auto v = a_k_value(k, prime_bound);
    v.name = "a_k(d)";
    v.d = d;
    double scale = 1.0;
    for (const auto& [p, e] : factorize(d).factors) scale /= local_factor(k, p);
    v.value *= scale;
    v.error_estimate *= scale;
    return v;
}

double gamma_k_simple(int k, double c) {
    if (k < 1) throw std::invalid_argument("gamma_k_simple: k must be positive");
    if (!(c >= k - 1 && c < k)) {
        throw std::domain_error("gamma_k_simple: formula holds only for c in [k-1, k), got c = " + std::to_string(c));
    }
    // Rounded once from the exact value so it matches the piecewise table bit for bit.
    return static_cast<double>(gamma_k_simple_exact(k, BigRational(c)));
}

BigRational gamma_k_simple_exact(int k, const BigRational& c) {
    if (k < 1) throw std::invalid_argument("gamma_k_simple: k must be positive");
    if (c < k - 1 || c >= k) throw std::domain_error("gamma_k_simple: formula holds only for c in [k-1, k)");
    const int deg = k * k - 1;
    return rational_pow(BigRational(k) - c, deg) / BigRational(factorial(deg));
}

BigRational PiecewisePolynomial::eval_branch(std::size_t i, const BigRational& c) const {
    BigRational acc = 0;
    for (std::size_t j = coeffs[i].size(); j-- > 0;) acc = acc * c + coeffs[i][j];
    return acc;
}

BigRational PiecewisePolynomial::eval(const BigRational& c) const {
    if (c < breaks.front() || c > breaks.back()) throw std::domain_error("PiecewisePolynomial: argument out of range");
    std::size_t i = 0;
    while (i + 1 < coeffs.size() && c >= breaks[i + 1]) ++i;
    return eval_branch(i, c);
}

double PiecewisePolynomial::eval(double c) const {
    if (!(c >= lower() && c <= upper())) throw std::domain_error("PiecewisePolynomial: argument out of range");
    // Expanded branches such as (3 - c)^8 cancel badly in floating point, so
    // evaluate at the exact binary value of c.
    return static_cast<double>(eval(BigRational(c)));
}

BigRational PiecewisePolynomial::integral() const {
    BigRational total = 0;
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        for (std::size_t j = 0; j < coeffs[i].size(); ++j) {
            const int e = static_cast<int>(j) + 1;
            total += coeffs[i][j] * (rational_pow(breaks[i + 1], e) - rational_pow(breaks[i], e)) / e;
        }
    }
    return total;
}

double PiecewisePolynomial::lower() const { return static_cast<double>(breaks.front()); }
double PiecewisePolynomial::upper() const { return static_cast<double>(breaks.back()); }

const PiecewisePolynomial& gamma_piecewise_table(int k) {
    static const PiecewisePolynomial tables[3] = {build_table(1), build_table(2), build_table(3)};
    if (k < 1 || k > 3) throw std::invalid_argument("gamma_piecewise_table: exact tables exist for k in {1, 2, 3} only");
    return tables[k - 1];
}

double gamma_3_piecewise(double c) {
    if (!(c >= 0.0 && c <= 3.0)) throw std::domain_error("gamma_3_piecewise: c must lie in [0, 3]");
    return gamma_piecewise_table(3).eval(c);
}

BigRational gamma_3_piecewise_exact(const BigRational& c) {
    if (c < 0 || c > 3) throw std::domain_error("gamma_3_piecewise: c must lie in [0, 3]");
    return gamma_piecewise_table(3).eval(c);
}

ConstantValue gamma_k_mc(int k, double c, u64 samples, u64 seed, int workers) {
    if (k < 1 || k > 5) throw std::invalid_argument("gamma_k_mc: k must lie in [1, 5]");
    if (!(c > 0.0 && c < k)) throw std::domain_error("gamma_k_mc: c must lie in (0, k)");
    ConstantValue v;
    v.name = "gamma_k(c)";
    v.method = ConstantMethod::MonteCarlo;
    v.k = k;
    v.c = c;
    v.seed = seed;
    v.workers = workers;
    if (k == 1) {
        v.value = 1.0;  // delta integrates to the indicator of (0, 1)
        return v;
    }
    if (samples < 10'000) throw std::invalid_argument("gamma_k_mc: at least 10^4 samples required");
    v.samples = samples;
    const auto m = kernels::omp::mc_slice(k, c, samples, seed, workers);
    const double norm = static_cast<double>(factorial(k) * barnes_g(k + 1) * barnes_g(k + 1));
    v.value = m.mean() / norm;
    v.error_estimate = m.std_error() / norm;
    return v;
}

BigRational g_k(int k) {
    if (k < 1 || k > 10) throw std::invalid_argument("g_k: k must lie in [1, 10]");
    BigRational r(factorial(k * k));
    for (int j = 0; j < k; ++j) r *= BigRational(factorial(j), factorial(j + k));
    return r;
}

MomentCheck gamma_integral_check(int k, u64 samples, u64 seed) {
    MomentCheck out;
    out.k = k;
    if (k >= 1 && k <= 3) {
        const BigRational lhs = BigRational(factorial(k * k)) * gamma_piecewise_table(k).integral();
        BigRational diff = lhs - g_k(k);
        if (diff < 0) diff = -diff;
        out.exact_residual = diff;
        out.residual = static_cast<double>(diff);
        out.exact = true;
        out.method = "piecewise-exact";
        return out;
    }
    if (k == 4 || k == 5) {
        // Integrating the delta over c leaves the cube integral of Delta^2.
        const auto m = kernels::omp::mc_cube(k, samples, seed);
        const BigInt g = barnes_g(k + 1);
        const double scale = static_cast<double>(BigRational(factorial(k * k), factorial(k) * g * g));
        const double lhs = scale * m.mean();
        out.residual = std::abs(lhs - static_cast<double>(g_k(k)));
        out.std_error = scale * m.std_error();
        out.method = "monte-carlo-cube";
        return out;
    }
    throw std::invalid_argument("gamma_integral_check: k must lie in [1, 5]");
}

ConvolutionComparison convolution_compare(int k, u64 d, u64 prime_bound) {
    const auto f = factorize(d);
    const auto divs = divisors(f);
    if (divs.size() > 10'000) throw std::invalid_argument("convolution_compare: too many divisors");
    KahanSum acc;
    for (u64 q : divs) {
        const u64 star = phi_star(q);
        if (star == 0) continue;
        acc.add(static_cast<double>(star) * a_k_d(k, d / q, prime_bound).value);
    }
    ConvolutionComparison r;
    r.lhs = acc.value() / static_cast<double>(euler_phi(f));
    r.rhs = a_k_d(k, d, prime_bound).value;
    r.relative_gap = std::abs(r.lhs - r.rhs) / std::abs(r.rhs);
    return r;
}

}  // namespace divvar
