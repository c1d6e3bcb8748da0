#pragma once

// Data-parallel inner loops. Each kernel exists as a serial reference
// (divvar::kernels::serial) and an OpenMP version (divvar::kernels::omp).
// Work is cut into fixed blocks whose partial results are merged in block
// order, so both versions return bit-identical results for any thread count.

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "divvar/arith.hpp"
#include "divvar/characters.hpp"
#include "divvar/summation.hpp"
#include "divvar/weights.hpp"

namespace divvar {

enum class CutoffKind { Sharp, Smooth };

/// The n-range and per-n weight omega(n) of a (possibly smoothed) sum.
/// Sharp: n in [1, floor(X)], omega = 1. Smooth: n in (X, 2X), omega = w(n/X).
struct WeightedRange {
    CutoffKind kind = CutoffKind::Sharp;
    double X = 0.0;
    u64 lo = 1;  // first n
    u64 hi = 1;  // one past the last n
    SmoothWeight weight = SmoothWeight::bump();

    static WeightedRange sharp(double X);
    static WeightedRange smooth(double X, SmoothWeight w = SmoothWeight::bump());

    double omega(u64 n) const { return kind == CutoffKind::Sharp ? 1.0 : weight(static_cast<double>(n) / X); }
    bool empty() const { return hi <= lo; }
    u64 size() const { return empty() ? 0 : hi - lo; }
};

/// Position of each residue mod d among the units (ascending), -1 otherwise.
struct UnitIndex {
    u64 modulus = 1;
    std::vector<std::int32_t> index;
    std::vector<u64> units;

    explicit UnitIndex(u64 d);
};

/// Counter-based uniform in [0, 1): a SplitMix64 finalizer applied to
/// (seed, sample index, coordinate), so any sample is reproducible in isolation.
inline double counter_uniform(u64 seed, u64 index, u64 coord) {
    u64 z = seed * 0xD1B54A32D192ED03ull + (index * 16 + coord + 1) * 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    z ^= z >> 31;
    return static_cast<double>(z >> 11) * 0x1.0p-53;
}

struct McMoments {
    double sum = 0.0;     // sum of f over samples
    double sum_sq = 0.0;  // sum of f^2
    u64 samples = 0;
    double volume = 1.0;  // measure of the sampled box

    double mean() const;      // volume * sum / samples
    double std_error() const;  // volume * sd / sqrt(samples)
};

inline constexpr u64 kMcBlock = u64{1} << 16;

namespace kernels {

namespace serial {

std::vector<u64> tau_range(int k, u64 lo, u64 hi, std::size_t segment = kDefaultSegmentSize);
/// tau_k(n) omega(n) for n in the range.
std::vector<double> weighted_tau(int k, const WeightedRange& r, std::size_t segment = kDefaultSegmentSize);
/// S_a = sum over n = a (mod d) of tau_k(n) omega(n), for units a in ascending
/// order, as compensated pairs.
std::vector<KahanSum> class_sums(int k, const UnitIndex& units, const WeightedRange& r,
                                 std::size_t segment = kDefaultSegmentSize);
/// sum_n weighted[n - lo] chi(n) for each chi.
std::vector<cplx> character_sums(std::span<const double> weighted, u64 lo, std::span<const DirichletCharacter> chars);
/// Vandermonde-squared integrand on the slice w_1 + ... + w_k = c (last coordinate solved).
McMoments mc_slice(int k, double c, u64 samples, u64 seed);
/// Vandermonde-squared integrand on the full cube [0,1]^k.
McMoments mc_cube(int k, u64 samples, u64 seed);

}  // namespace serial

namespace omp {

std::vector<u64> tau_range(int k, u64 lo, u64 hi, std::size_t segment = kDefaultSegmentSize, int workers = 0);
std::vector<double> weighted_tau(int k, const WeightedRange& r, std::size_t segment = kDefaultSegmentSize,
                                 int workers = 0);
std::vector<KahanSum> class_sums(int k, const UnitIndex& units, const WeightedRange& r,
                                 std::size_t segment = kDefaultSegmentSize, int workers = 0);
std::vector<cplx> character_sums(std::span<const double> weighted, u64 lo, std::span<const DirichletCharacter> chars,
                                 int workers = 0);
McMoments mc_slice(int k, double c, u64 samples, u64 seed, int workers = 0);
McMoments mc_cube(int k, u64 samples, u64 seed, int workers = 0);

}  // namespace omp

}  // namespace kernels

}  // namespace divvar
