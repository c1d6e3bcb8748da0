#include <omp.h>

#include <cmath>
#include <stdexcept>

#include "divvar/kernels.hpp"
#include "kernel_blocks.hpp"

namespace divvar::kernels::omp {

namespace {

int resolve(int workers) { return workers > 0 ? workers : omp_get_max_threads(); }

// Caps the number of live per-segment partial arrays in class_sums.
constexpr std::size_t kPartialBudgetBytes = std::size_t{256} << 20;

}  // namespace

std::vector<u64> tau_range(int k, u64 lo, u64 hi, std::size_t segment, int workers) {
    if (lo < 1 || hi < lo) throw std::invalid_argument("tau_range: need 1 <= lo <= hi");
    std::vector<u64> out(hi - lo);
    if (hi == lo) return out;
    const detail::SegmentPlan plan(lo, hi, segment);
    const auto sieve = detail::make_sieve(k, hi, segment);
    const auto count = static_cast<std::int64_t>(plan.count());
#pragma omp parallel num_threads(resolve(workers))
    {
        std::vector<u64> scratch;
#pragma omp for schedule(dynamic, 1)
        for (std::int64_t i = 0; i < count; ++i) {
            detail::tau_block(sieve, plan.begin(i), plan.end(i), out.data() + (plan.begin(i) - lo), scratch);
        }
    }
    return out;
}

std::vector<double> weighted_tau(int k, const WeightedRange& r, std::size_t segment, int workers) {
    std::vector<double> out(r.size());
    if (r.empty()) return out;
    const detail::SegmentPlan plan(r.lo, r.hi, segment);
    const auto sieve = detail::make_sieve(k, r.hi, segment);
    const auto count = static_cast<std::int64_t>(plan.count());
#pragma omp parallel num_threads(resolve(workers))
    {
        std::vector<u64> tau, scratch;
#pragma omp for schedule(dynamic, 1)
        for (std::int64_t i = 0; i < count; ++i) {
            detail::weighted_block(sieve, r, plan.begin(i), plan.end(i), out.data() + (plan.begin(i) - r.lo), tau,
                                   scratch);
        }
    }
    return out;
}

std::vector<KahanSum> class_sums(int k, const UnitIndex& units, const WeightedRange& r, std::size_t segment,
                               int workers) {
    const std::size_t nclass = units.units.size();
    std::vector<KahanSum> total(nclass);
    if (!r.empty()) {
        const detail::SegmentPlan plan(r.lo, r.hi, segment);
        const auto sieve = detail::make_sieve(k, r.hi, segment);
        const int threads = resolve(workers);
        const std::size_t nseg = plan.count();
        const std::size_t per_batch = std::max<std::size_t>(
            static_cast<std::size_t>(threads), kPartialBudgetBytes / std::max<std::size_t>(1, nclass * sizeof(KahanSum)));
        for (std::size_t first = 0; first < nseg; first += per_batch) {
            const std::size_t last = std::min(nseg, first + per_batch);
            std::vector<std::vector<KahanSum>> parts(last - first);
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
            for (std::int64_t i = static_cast<std::int64_t>(first); i < static_cast<std::int64_t>(last); ++i) {
                parts[i - first] = detail::class_block(sieve, units, r, plan.begin(i), plan.end(i));
            }
            for (const auto& part : parts) {
                for (std::size_t a = 0; a < nclass; ++a) total[a].merge(part[a]);
            }
        }
    }
    return total;
}

std::vector<cplx> character_sums(std::span<const double> weighted, u64 lo, std::span<const DirichletCharacter> chars,
                                 int workers) {
    std::vector<cplx> out(chars.size());
    const auto count = static_cast<std::int64_t>(chars.size());
#pragma omp parallel for schedule(dynamic, 1) num_threads(resolve(workers))
    for (std::int64_t i = 0; i < count; ++i) out[i] = detail::character_block(weighted, lo, chars[i]);
    return out;
}

McMoments mc_slice(int k, double c, u64 samples, u64 seed, int workers) {
    detail::check_mc(k, samples);
    const u64 nblocks = (samples + kMcBlock - 1) / kMcBlock;
    std::vector<detail::McBlock> blocks(nblocks);
#pragma omp parallel for schedule(dynamic, 1) num_threads(resolve(workers))
    for (std::int64_t b = 0; b < static_cast<std::int64_t>(nblocks); ++b) {
        const u64 i0 = static_cast<u64>(b) * kMcBlock;
        blocks[b] = detail::mc_slice_block(k, c, seed, i0, std::min(samples, i0 + kMcBlock));
    }
    const auto box = detail::slice_box(k, c);
    return detail::finish(blocks, samples, std::pow(std::max(0.0, box.hi - box.lo), k - 1));
}

McMoments mc_cube(int k, u64 samples, u64 seed, int workers) {
    detail::check_mc(k, samples);
    const u64 nblocks = (samples + kMcBlock - 1) / kMcBlock;
    std::vector<detail::McBlock> blocks(nblocks);
#pragma omp parallel for schedule(dynamic, 1) num_threads(resolve(workers))
    for (std::int64_t b = 0; b < static_cast<std::int64_t>(nblocks); ++b) {
        const u64 i0 = static_cast<u64>(b) * kMcBlock;
        blocks[b] = detail::mc_cube_block(k, seed, i0, std::min(samples, i0 + kMcBlock));
    }
    return detail::finish(blocks, samples, 1.0);
}

}  // namespace divvar::kernels::omp
