#pragma once

// Exact multiplicative-function arithmetic: factorization, the k-fold divisor
// function tau_k (closed form and segmented sieve), phi, mu, phi* and
// Dirichlet convolution.

#include <cstdint>
#include <functional>
#include <span>
#include <utility>
#include <vector>

namespace divvar {

using u64 = std::uint64_t;
using i64 = std::int64_t;

inline constexpr u64 kMaxFactorizable = (u64{1} << 63) - 1;
inline constexpr int kMaxTauK = 16;
inline constexpr std::size_t kDefaultSegmentSize = std::size_t{1} << 22;

struct PrimePower {
    u64 prime;
    int exponent;
    friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// Canonical prime factorization; primes strictly increasing, exponents >= 1.
struct Factorization {
    u64 n = 1;
    std::vector<PrimePower> factors;

    u64 product() const;
    bool is_prime() const { return factors.size() == 1 && factors[0].exponent == 1; }
};

Factorization factorize(u64 n);

bool is_prime(u64 n);
std::vector<u64> primes_up_to(u64 limit);
std::vector<u64> divisors(const Factorization& f);
inline std::vector<u64> divisors(u64 n) { return divisors(factorize(n)); }
u64 gcd(u64 a, u64 b);

/// C(n, r) in 64 bits; throws std::overflow_error instead of wrapping.
u64 binomial(u64 n, u64 r);

/// tau_k(p^j) = C(k + j - 1, k - 1) for j = 0..max_exponent.
std::vector<u64> tau_prime_power_row(int k, int max_exponent);

u64 tau_k_of(int k, u64 n);
u64 tau_k_of(int k, const Factorization& f);

u64 euler_phi(u64 n);
u64 euler_phi(const Factorization& f);
int moebius(u64 n);
int moebius(const Factorization& f);
/// Number of primitive characters mod q: (mu * phi)(q).
u64 phi_star(u64 q);
u64 phi_star(const Factorization& f);

using ArithmeticFunction = std::function<double(u64)>;

/// (f * g)(n) = sum over n = uv of f(u) g(v); divisor pairs in ascending u.
double dirichlet_convolve(const ArithmeticFunction& f, const ArithmeticFunction& g, u64 n);

struct TauSegment {
    int k = 1;
    u64 lo = 1;
    u64 hi = 1;
    std::vector<u64> values;  // values[n - lo] = tau_k(n)

    u64 operator[](u64 n) const { return values[n - lo]; }
    std::size_t size() const { return values.size(); }
};

/// Multiplicative sieve for tau_k over [lo, hi) with hi bounded at
/// construction. Holds the base primes up to sqrt(hi_limit) and the binomial
/// row; segment() is const and safe to call concurrently.
class TauSieve {
public:
    TauSieve(int k, u64 hi_limit, std::size_t max_segment = kDefaultSegmentSize);

    int k() const { return k_; }
    u64 hi_limit() const { return hi_limit_; }
    std::size_t max_segment() const { return max_segment_; }

    TauSegment segment(u64 lo, u64 hi) const;
    /// Writes tau_k(n) for n in [lo, lo + out.size()) into out.
    void fill(u64 lo, std::span<u64> out, std::span<u64> scratch) const;

private:
    int k_;
    u64 hi_limit_;
    std::size_t max_segment_;
    std::vector<u64> primes_;
    std::vector<u64> row_;
};

TauSegment tau_k_segment(int k, u64 lo, u64 hi, std::size_t max_segment = kDefaultSegmentSize);

}  // namespace divvar
