#include <cmath>
#include <stdexcept>

#include "divvar/kernels.hpp"
#include "kernel_blocks.hpp"

namespace divvar {

WeightedRange WeightedRange::sharp(double X) {
    WeightedRange r;
    r.kind = CutoffKind::Sharp;
    r.X = X;
    r.lo = 1;
    r.hi = X >= 1.0 ? static_cast<u64>(std::floor(X)) + 1 : 1;
    return r;
}

WeightedRange WeightedRange::smooth(double X, SmoothWeight w) {
    if (!(X > 0.0)) throw std::invalid_argument("WeightedRange::smooth: X must be positive");
    WeightedRange r;
    r.kind = CutoffKind::Smooth;
    r.X = X;
    r.lo = static_cast<u64>(std::floor(X)) + 1;
    r.hi = static_cast<u64>(std::ceil(2.0 * X));
    if (r.hi < r.lo) r.hi = r.lo;
    r.weight = std::move(w);
    return r;
}

UnitIndex::UnitIndex(u64 d) : modulus(d), index(d, -1) {
    if (d == 0) throw std::invalid_argument("UnitIndex: modulus must be positive");
    for (u64 a = 0; a < d; ++a) {
        if (gcd(a, d) == 1) {
            index[a] = static_cast<std::int32_t>(units.size());
            units.push_back(a);
        }
    }
}

double McMoments::mean() const { return volume * sum / static_cast<double>(samples); }

double McMoments::std_error() const {
    const double n = static_cast<double>(samples);
    const double m = sum / n;
    const double var = std::max(0.0, sum_sq / n - m * m) * n / std::max(1.0, n - 1.0);
    return volume * std::sqrt(var / n);
}

namespace kernels::serial {

std::vector<u64> tau_range(int k, u64 lo, u64 hi, std::size_t segment) {
    if (lo < 1 || hi < lo) throw std::invalid_argument("tau_range: need 1 <= lo <= hi");
    std::vector<u64> out(hi - lo);
    if (hi == lo) return out;
    const detail::SegmentPlan plan(lo, hi, segment);
    const auto sieve = detail::make_sieve(k, hi, segment);
    std::vector<u64> scratch;
    for (std::size_t i = 0; i < plan.count(); ++i) {
        detail::tau_block(sieve, plan.begin(i), plan.end(i), out.data() + (plan.begin(i) - lo), scratch);
    }
    return out;
}

std::vector<double> weighted_tau(int k, const WeightedRange& r, std::size_t segment) {
    std::vector<double> out(r.size());
    if (r.empty()) return out;
    const detail::SegmentPlan plan(r.lo, r.hi, segment);
    const auto sieve = detail::make_sieve(k, r.hi, segment);
    std::vector<u64> tau, scratch;
    for (std::size_t i = 0; i < plan.count(); ++i) {
        detail::weighted_block(sieve, r, plan.begin(i), plan.end(i), out.data() + (plan.begin(i) - r.lo), tau, scratch);
    }
    return out;
}

std::vector<KahanSum> class_sums(int k, const UnitIndex& units, const WeightedRange& r, std::size_t segment) {
    std::vector<KahanSum> total(units.units.size());
    if (!r.empty()) {
        const detail::SegmentPlan plan(r.lo, r.hi, segment);
        const auto sieve = detail::make_sieve(k, r.hi, segment);
        for (std::size_t i = 0; i < plan.count(); ++i) {
            const auto part = detail::class_block(sieve, units, r, plan.begin(i), plan.end(i));
            for (std::size_t a = 0; a < total.size(); ++a) total[a].merge(part[a]);
        }
    }
    return total;
}

std::vector<cplx> character_sums(std::span<const double> weighted, u64 lo, std::span<const DirichletCharacter> chars) {
    std::vector<cplx> out(chars.size());
    for (std::size_t i = 0; i < chars.size(); ++i) out[i] = detail::character_block(weighted, lo, chars[i]);
    return out;
}

McMoments mc_slice(int k, double c, u64 samples, u64 seed) {
    detail::check_mc(k, samples);
    const u64 nblocks = (samples + kMcBlock - 1) / kMcBlock;
    std::vector<detail::McBlock> blocks(nblocks);
    for (u64 b = 0; b < nblocks; ++b) {
        blocks[b] = detail::mc_slice_block(k, c, seed, b * kMcBlock, std::min(samples, (b + 1) * kMcBlock));
    }
    const auto box = detail::slice_box(k, c);
    return detail::finish(blocks, samples, std::pow(std::max(0.0, box.hi - box.lo), k - 1));
}

McMoments mc_cube(int k, u64 samples, u64 seed) {
    detail::check_mc(k, samples);
    const u64 nblocks = (samples + kMcBlock - 1) / kMcBlock;
    std::vector<detail::McBlock> blocks(nblocks);
    for (u64 b = 0; b < nblocks; ++b) {
        blocks[b] = detail::mc_cube_block(k, seed, b * kMcBlock, std::min(samples, (b + 1) * kMcBlock));
    }
    return detail::finish(blocks, samples, 1.0);
}

}  // namespace kernels::serial

}  // namespace divvar
