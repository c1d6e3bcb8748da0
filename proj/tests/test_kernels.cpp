#include <doctest.h>

#include <cmath>

#include "divvar/kernels.hpp"

using namespace divvar;

namespace {

bool same(const McMoments& a, const McMoments& b) {
    return a.sum == b.sum && a.sum_sq == b.sum_sq && a.samples == b.samples && a.volume == b.volume;
}

}  // namespace

TEST_CASE("weighted ranges") {
    const auto s = WeightedRange::sharp(10.7);
    CHECK(s.lo == 1);
    CHECK(s.hi == 11);
    CHECK(s.omega(5) == 1.0);
    CHECK(WeightedRange::sharp(0.5).empty());

    const auto m = WeightedRange::smooth(100.0);
    CHECK(m.lo == 101);
    CHECK(m.hi == 200);
    CHECK(m.omega(100) == 0.0);
    CHECK(m.omega(150) > 0.0);
    const auto f = WeightedRange::smooth(100.5);
    CHECK(f.lo == 101);
    CHECK(f.hi == 201);
}

TEST_CASE("unit index") {
    const UnitIndex u(12);
    CHECK(u.units == std::vector<u64>{1, 5, 7, 11});
    CHECK(u.index[5] == 1);
    CHECK(u.index[6] == -1);
    const UnitIndex one(1);
    CHECK(one.units.size() == 1);
}

TEST_CASE("counter uniform") {
    for (u64 i = 0; i < 10'000; ++i) {
        const double x = counter_uniform(42, i, i % 5);
        CHECK(x >= 0.0);
        CHECK(x < 1.0);
    }
    CHECK(counter_uniform(1, 2, 3) == counter_uniform(1, 2, 3));
    CHECK(counter_uniform(1, 2, 3) != counter_uniform(2, 2, 3));
    double mean = 0.0;
    for (u64 i = 0; i < 100'000; ++i) mean += counter_uniform(9, i, 0);
    CHECK(mean / 100'000 == doctest::Approx(0.5).epsilon(0.01));
}

TEST_CASE("tau_range: serial and OpenMP agree") {
    for (std::size_t seg : {std::size_t{1000}, std::size_t{4093}, kDefaultSegmentSize}) {
        const auto ref = kernels::serial::tau_range(3, 1, 200'000, seg);
        for (u64 n = 1; n < 2000; ++n) REQUIRE(ref[n - 1] == tau_k_of(3, n));
        for (int w : {1, 2, 8}) CHECK(kernels::omp::tau_range(3, 1, 200'000, seg, w) == ref);
    }
    CHECK(kernels::serial::tau_range(2, 5, 5).empty());
}

TEST_CASE("weighted_tau and class_sums: bitwise across workers") {
    for (auto range : {WeightedRange::sharp(150'000.0), WeightedRange::smooth(80'000.3)}) {
        const auto ref = kernels::serial::weighted_tau(3, range, 7001);
        for (int w : {1, 2, 8}) CHECK(kernels::omp::weighted_tau(3, range, 7001, w) == ref);
        for (u64 d : {7, 60, 101}) {
            const UnitIndex units(d);
            const auto cref = kernels::serial::class_sums(3, units, range, 7001);
            for (int w : {1, 2, 8}) CHECK(kernels::omp::class_sums(3, units, range, 7001, w) == cref);
            double total = 0.0, direct = 0.0;
            for (const auto& s : cref) total += s.value();
            for (std::size_t i = 0; i < ref.size(); ++i) {
                if (gcd(range.lo + i, d) == 1) direct += ref[i];
            }
            CHECK(total == doctest::Approx(direct).epsilon(1e-13));
        }
    }
}

TEST_CASE("character_sums: bitwise across workers") {
    const auto range = WeightedRange::smooth(20'000.0);
    const auto weighted = kernels::serial::weighted_tau(2, range);
    for (u64 d : {5, 24, 97}) {
        const auto chars = enumerate_characters(d);
        const auto ref = kernels::serial::character_sums(weighted, range.lo, chars);
        for (int w : {1, 2, 8}) CHECK(kernels::omp::character_sums(weighted, range.lo, chars, w) == ref);
        // Principal character sum equals the sum over units.
        double s = 0.0;
        for (std::size_t i = 0; i < weighted.size(); ++i) {
            if (gcd(range.lo + i, d) == 1) s += weighted[i];
        }
        CHECK(ref[0].real() == doctest::Approx(s).epsilon(1e-13));
    }
}

TEST_CASE("Monte Carlo kernels: bitwise across workers") {
    for (int k : {2, 3, 5}) {
        const auto ref = kernels::serial::mc_slice(k, k - 0.5, 300'001, 17);
        CHECK(ref.samples == 300'001);
        for (int w : {1, 2, 8}) CHECK(same(kernels::omp::mc_slice(k, k - 0.5, 300'001, 17, w), ref));
        const auto cube = kernels::serial::mc_cube(k, 200'000, 3);
        for (int w : {1, 2, 8}) CHECK(same(kernels::omp::mc_cube(k, 200'000, 3, w), cube));
    }
    // Cube integral of the squared Vandermonde for k = 2: integral of (x - y)^2 = 1/6.
    const auto m = kernels::serial::mc_cube(2, 1'000'000, 1);
    CHECK(std::abs(m.mean() - 1.0 / 6.0) < 4 * m.std_error());
}
