#pragma once

// Block bodies shared by the serial and OpenMP kernels; identical arithmetic
// per block is what makes the two bit-compatible.

#include <algorithm>
#include <vector>

#include "divvar/kernels.hpp"

namespace divvar::kernels::detail {

struct SegmentPlan {
    u64 lo = 1;
    u64 hi = 1;
    u64 segment = kDefaultSegmentSize;

    SegmentPlan(u64 lo_, u64 hi_, std::size_t segment_) : lo(lo_), hi(hi_), segment(segment_) {}
    std::size_t count() const { return hi <= lo ? 0 : static_cast<std::size_t>((hi - lo + segment - 1) / segment); }
    u64 begin(std::size_t i) const { return lo + i * segment; }
    u64 end(std::size_t i) const { return std::min(hi, lo + (i + 1) * segment); }
};

inline TauSieve make_sieve(int k, u64 hi, std::size_t segment) { return TauSieve(k, std::max<u64>(hi - 1, 2), segment); }

inline void tau_block(const TauSieve& sieve, u64 lo, u64 hi, u64* out, std::vector<u64>& scratch) {
    scratch.resize(hi - lo);
    sieve.fill(lo, std::span<u64>(out, hi - lo), scratch);
}

inline void weighted_block(const TauSieve& sieve, const WeightedRange& r, u64 lo, u64 hi, double* out,
                           std::vector<u64>& tau, std::vector<u64>& scratch) {
    tau.resize(hi - lo);
    tau_block(sieve, lo, hi, tau.data(), scratch);
    for (u64 n = lo; n < hi; ++n) out[n - lo] = static_cast<double>(tau[n - lo]) * r.omega(n);
}

inline std::vector<KahanSum> class_block(const TauSieve& sieve, const UnitIndex& units, const WeightedRange& r, u64 lo,
                                         u64 hi) {
    std::vector<u64> tau(hi - lo), scratch;
    tau_block(sieve, lo, hi, tau.data(), scratch);
    std::vector<KahanSum> part(units.units.size());
    const u64 d = units.modulus;
    u64 res = lo % d;
    for (u64 n = lo; n < hi; ++n) {
        const std::int32_t idx = units.index[res];
        if (idx >= 0) part[static_cast<std::size_t>(idx)].add(static_cast<double>(tau[n - lo]) * r.omega(n));
        if (++res == d) res = 0;
    }
    return part;
}

inline cplx character_block(std::span<const double> weighted, u64 lo, const DirichletCharacter& chi) {
    const auto& g = chi.group();
    const u64 d = g.modulus();
    std::vector<std::uint32_t> angle(d, UINT32_MAX);
    for (u64 a = 0; a < d; ++a) {
        if (auto v = chi.angle(static_cast<i64>(a))) angle[a] = static_cast<std::uint32_t>(*v);
    }
    KahanComplexSum acc;
    u64 res = lo % d;
    for (std::size_t i = 0; i < weighted.size(); ++i) {
        if (angle[res] != UINT32_MAX && weighted[i] != 0.0) acc.add(weighted[i] * g.root(angle[res]));
        if (++res == d) res = 0;
    }
    return acc.value();
}

inline double vandermonde_sq(const double* w, int k) {
    double v = 1.0;
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j) v *= w[i] - w[j];
    return v * v;
}

struct McBlock {
    KahanSum sum;
    KahanSum sum_sq;
};

struct SliceBox {
    double lo;
    double hi;
};

// Box for w_1..w_{k-1} on the slice: w_k = c - sum lies in [0, 1] only if every
// other coordinate lies in [c - (k-1), c].
inline SliceBox slice_box(int k, double c) { return {std::max(0.0, c - (k - 1)), std::min(1.0, c)}; }

inline McBlock mc_slice_block(int k, double c, u64 seed, u64 i0, u64 i1) {
    const SliceBox box = slice_box(k, c);
    const double width = box.hi - box.lo;
    McBlock b;
    double w[16];
    for (u64 i = i0; i < i1; ++i) {
        double s = 0.0;
        for (int j = 0; j < k - 1; ++j) {
            w[j] = box.lo + width * counter_uniform(seed, i, static_cast<u64>(j));
            s += w[j];
        }
        w[k - 1] = c - s;
        double f = 0.0;
        if (w[k - 1] >= 0.0 && w[k - 1] <= 1.0) f = vandermonde_sq(w, k);
        b.sum.add(f);
        b.sum_sq.add(f * f);
    }
    return b;
}

inline McBlock mc_cube_block(int k, u64 seed, u64 i0, u64 i1) {
    McBlock b;
    double w[16];
    for (u64 i = i0; i < i1; ++i) {
        for (int j = 0; j < k; ++j) w[j] = counter_uniform(seed, i, static_cast<u64>(j));
        const double f = vandermonde_sq(w, k);
        b.sum.add(f);
        b.sum_sq.add(f * f);
    }
    return b;
}

inline McMoments finish(const std::vector<McBlock>& blocks, u64 samples, double volume) {
    McBlock total;
    for (const auto& b : blocks) {
        total.sum.merge(b.sum);
        total.sum_sq.merge(b.sum_sq);
    }
    return McMoments{total.sum.value(), total.sum_sq.value(), samples, volume};
}

inline void check_mc(int k, u64 samples) {
    if (k < 1 || k > 15) throw std::invalid_argument("Monte Carlo kernels support 1 <= k <= 15");
    if (samples == 0) throw std::invalid_argument("Monte Carlo kernels need at least one sample");
}

}  // namespace divvar::kernels::detail
