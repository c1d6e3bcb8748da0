#include "divvar/arith.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace divvar {

namespace {

using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

u64 powmod(u64 b, u64 e, u64 m) {
    u64 r = 1 % m;
    b %= m;
    while (e) {
        if (e & 1) r = mulmod(r, b, m);
        b = mulmod(b, b, m);
        e >>= 1;
    }
    return r;
}

// Deterministic Miller-Rabin for all 64-bit n.
bool miller_rabin(u64 n) {
    if (n < 2) return false;
    for (u64 p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n % p == 0) return n == p;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (u64 a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        u64 x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int r = 1; r < s; ++r) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

// Brent's variant of Pollard rho; n composite, odd, no small factors.
u64 pollard_brent(u64 n) {
    for (u64 c = 1;; ++c) {
        u64 y = 2, x = 2, g = 1, q = 1, ys = 2;
        const u64 m = 128;
        u64 r = 1;
        auto f = [&](u64 v) { return (mulmod(v, v, n) + c) % n; };
        do {
            x = y;
            for (u64 i = 0; i < r; ++i) y = f(y);
            u64 k = 0;
            do {
                ys = y;
                for (u64 i = 0; i < std::min(m, r - k); ++i) {
                    y = f(y);
                    q = mulmod(q, x > y ? x - y : y - x, n);
                }
                g = std::gcd(q, n);
                k += m;
            } while (k < r && g == 1);
            r <<= 1;
        } while (g == 1);
        if (g == n) {
            do {
                ys = f(ys);
                g = std::gcd(x > ys ? x - ys : ys - x, n);
            } while (g == 1);
        }
        if (g != n) return g;
    }
}

void split(u64 n, std::vector<u64>& out) {
    if (n == 1) return;
    if (miller_rabin(n)) {
        out.push_back(n);
        return;
    }
    u64 f = pollard_brent(n);
    split(f, out);
    split(n / f, out);
}

u64 checked_mul(u64 a, u64 b, const char* what) {
    u64 r;
    if (__builtin_mul_overflow(a, b, &r)) {
        throw std::overflow_error(std::string(what) + ": result exceeds 64 bits");
    }
    return r;
}

void check_k(int k) {
    if (k < 1 || k > kMaxTauK) {
        throw std::invalid_argument("tau_k: k must lie in [1, " + std::to_string(kMaxTauK) + "], got " +
                                    std::to_string(k));
    }
}

}  // namespace

u64 Factorization::product() const {
    u64 r = 1;
    for (const auto& [p, e] : factors) {
        for (int i = 0; i < e; ++i) r *= p;
    }
    return r;
}

u64 gcd(u64 a, u64 b) { return std::gcd(a, b); }

bool is_prime(u64 n) { return miller_rabin(n); }

Factorization factorize(u64 n) {
    if (n == 0) throw std::invalid_argument("factorize: n must be positive");
    if (n > kMaxFactorizable) throw std::invalid_argument("factorize: n exceeds 2^63 - 1");
    Factorization f;
    f.n = n;
    std::vector<u64> primes;
    u64 m = n;
    for (u64 p = 2; p < 1000 && p * p <= m; p += (p == 2 ? 1 : 2)) {
        while (m % p == 0) {
            primes.push_back(p);
            m /= p;
        }
    }
    if (m > 1) split(m, primes);
    std::sort(primes.begin(), primes.end());
    for (u64 p : primes) {
        if (!f.factors.empty() && f.factors.back().prime == p) {
            ++f.factors.back().exponent;
        } else {
            f.factors.push_back({p, 1});
        }
    }
    return f;
}

std::vector<u64> primes_up_to(u64 limit) {
    std::vector<u64> primes;
    if (limit < 2) return primes;
    std::vector<char> composite(limit + 1, 0);
    for (u64 i = 2; i <= limit; ++i) {
        if (composite[i]) continue;
        primes.push_back(i);
        if (i <= limit / i) {
            for (u64 j = i * i; j <= limit; j += i) composite[j] = 1;
        }
    }
    return primes;
}

std::vector<u64> divisors(const Factorization& f) {
    std::vector<u64> out{1};
    for (const auto& [p, e] : f.factors) {
        const std::size_t base = out.size();
        u64 pk = 1;
        for (int i = 1; i <= e; ++i) {
            pk *= p;
            for (std::size_t j = 0; j < base; ++j) out.push_back(out[j] * pk);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

u64 binomial(u64 n, u64 r) {
    if (r > n) return 0;
    r = std::min(r, n - r);
    u128 acc = 1;
    for (u64 i = 1; i <= r; ++i) {
        // acc * (n - r + i) / i stays exact: acc = C(n - r + i - 1, i - 1).
        acc = acc * (n - r + i) / i;
        if (acc > std::numeric_limits<u64>::max()) {
            throw std::overflow_error("binomial: C(" + std::to_string(n) + ", " + std::to_string(r) +
                                      ") exceeds 64 bits");
        }
    }
    return static_cast<u64>(acc);
}

std::vector<u64> tau_prime_power_row(int k, int max_exponent) {
    check_k(k);
    std::vector<u64> row(static_cast<std::size_t>(max_exponent) + 1);
    for (int j = 0; j <= max_exponent; ++j) row[j] = binomial(static_cast<u64>(k + j - 1), static_cast<u64>(k - 1));
    return row;
}

u64 tau_k_of(int k, const Factorization& f) {
    check_k(k);
    u64 r = 1;
    for (const auto& [p, e] : f.factors) {
        r = checked_mul(r, binomial(static_cast<u64>(k + e - 1), static_cast<u64>(k - 1)), "tau_k");
    }
    return r;
}

u64 tau_k_of(int k, u64 n) { return tau_k_of(k, factorize(n)); }

u64 euler_phi(const Factorization& f) {
    u64 r = 1;
    for (const auto& [p, e] : f.factors) {
        r *= p - 1;
        for (int i = 1; i < e; ++i) r *= p;
    }
    return r;
}

u64 euler_phi(u64 n) { return euler_phi(factorize(n)); }

int moebius(const Factorization& f) {
    for (const auto& pe : f.factors) {
        if (pe.exponent > 1) return 0;
    }
    return (f.factors.size() % 2) ? -1 : 1;
}

int moebius(u64 n) { return moebius(factorize(n)); }

// phi* is multiplicative: phi*(p) = p - 2, phi*(p^e) = p^(e-2) (p-1)^2 for e >= 2.
u64 phi_star(const Factorization& f) {
    u64 r = 1;
    for (const auto& [p, e] : f.factors) {
        if (e == 1) {
            r *= p - 2;
        } else {
            u64 local = (p - 1) * (p - 1);
            for (int i = 2; i < e; ++i) local *= p;
            r *= local;
        }
        if (r == 0) return 0;
    }
    return r;
}

u64 phi_star(u64 q) { return phi_star(factorize(q)); }

double dirichlet_convolve(const ArithmeticFunction& f, const ArithmeticFunction& g, u64 n) {
    double acc = 0.0;
    for (u64 u : divisors(n)) acc += f(u) * g(n / u);
    return acc;
}

TauSieve::TauSieve(int k, u64 hi_limit, std::size_t max_segment)
    : k_(k), hi_limit_(hi_limit), max_segment_(max_segment) {
    check_k(k);
    if (hi_limit < 2) throw std::invalid_argument("TauSieve: hi_limit must be at least 2");
    if (max_segment == 0) throw std::invalid_argument("TauSieve: max_segment must be positive");
    u64 root = static_cast<u64>(std::sqrt(static_cast<double>(hi_limit)));
    while (root * root > hi_limit) --root;
    while ((root + 1) * (root + 1) <= hi_limit) ++root;
    primes_ = primes_up_to(root);
    row_ = tau_prime_power_row(k, 63);
}

void TauSieve::fill(u64 lo, std::span<u64> out, std::span<u64> scratch) const {
    const u64 len = out.size();
    const u64 hi = lo + len;
    if (lo < 1 || hi > hi_limit_ + 1) throw std::out_of_range("TauSieve::fill: range outside sieve limit");
    if (scratch.size() < len) throw std::invalid_argument("TauSieve::fill: scratch too small");

    // scratch holds the smooth part of each n found so far.
    std::fill(out.begin(), out.end(), u64{1});
    std::fill(scratch.begin(), scratch.begin() + static_cast<std::ptrdiff_t>(len), u64{1});
    const u64 k = static_cast<u64>(k_);
    for (u64 p : primes_) {
        if (p * p > hi) break;
        u64 pj = p;
        for (int j = 1;; ++j) {
            u64 start = (lo + pj - 1) / pj * pj;
            if (j == 1) {
                for (u64 m = start; m < hi; m += pj) {
                    out[m - lo] *= k;
                    scratch[m - lo] *= p;
                }
            } else {
                const u64 prev = row_[j - 1], cur = row_[j];
                for (u64 m = start; m < hi; m += pj) {
                    u64& t = out[m - lo];
                    t = checked_mul(t / prev, cur, "tau_k sieve");
                    scratch[m - lo] *= p;
                }
            }
            if (pj > (hi - 1) / p) break;
            pj *= p;
        }
    }
    for (u64 i = 0; i < len; ++i) {
        // Cofactor above sqrt(hi) is a single prime.
        if (scratch[i] != lo + i) out[i] = checked_mul(out[i], k, "tau_k sieve");
    }
}

TauSegment TauSieve::segment(u64 lo, u64 hi) const {
    if (lo < 1 || hi <= lo) throw std::invalid_argument("tau_k_segment: need 1 <= lo < hi");
    if (hi - lo > max_segment_) {
        throw std::length_error("tau_k_segment: segment of " + std::to_string(hi - lo) +
                                " entries exceeds configured maximum " + std::to_string(max_segment_) +
                                " (" + std::to_string(16 * (hi - lo) >> 20) + " MiB requested)");
    }
    TauSegment seg;
    seg.k = k_;
    seg.lo = lo;
    seg.hi = hi;
    seg.values.resize(hi - lo);
    std::vector<u64> scratch(hi - lo);
    fill(lo, seg.values, scratch);
    return seg;
}

TauSegment tau_k_segment(int k, u64 lo, u64 hi, std::size_t max_segment) {
    check_k(k);
    if (lo < 1 || hi <= lo) throw std::invalid_argument("tau_k_segment: need 1 <= lo < hi");
    if (hi - lo > max_segment) {
        throw std::length_error("tau_k_segment: segment of " + std::to_string(hi - lo) +
                                " entries exceeds configured maximum " + std::to_string(max_segment));
    }
    return TauSieve(k, std::max<u64>(hi - 1, 2), max_segment).segment(lo, hi);
}

}  // namespace divvar
