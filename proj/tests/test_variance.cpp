#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "divvar/variance.hpp"

using namespace divvar;

namespace {

// Class sums by definition, tau from the closed form.
double brute_variance(int k, u64 d, double X, CutoffKind cut) {
    const auto w = SmoothWeight::bump();
    std::vector<double> cls(d, 0.0);
    const u64 top = cut == CutoffKind::Sharp ? static_cast<u64>(std::floor(X)) : static_cast<u64>(std::ceil(2 * X));
    for (u64 n = 1; n <= top; ++n) {
        const double omega = cut == CutoffKind::Sharp ? 1.0 : w(double(n) / X);
        cls[n % d] += double(tau_k_of(k, n)) * omega;
    }
    double total = 0.0;
    u64 units = 0;
    for (u64 a = 0; a < d; ++a) {
        if (gcd(a, d) == 1) total += cls[a], ++units;
    }
    const double mean = total / double(units);
    double v = 0.0;
    for (u64 a = 0; a < d; ++a) {
        if (gcd(a, d) == 1) v += (cls[a] - mean) * (cls[a] - mean);
    }
    return v;
}

}  // namespace

TEST_CASE("hand oracle") {
    // n <= 10, d = 4: class 1 holds 1, 5, 9 (tau 1, 2, 3), class 3 holds 3, 7 (tau 2, 2).
    CHECK(brute_variance(2, 4, 10, CutoffKind::Sharp) == 2.0);
    CHECK(variance_direct(2, 4, 10, CutoffKind::Sharp) == 2.0);
    CHECK(variance_characters(2, 4, 10, CutoffKind::Sharp) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(variance_primitive(2, 4, 10, CutoffKind::Sharp) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(variance_direct(2, 4, x_from_c(4, std::log(10.0) / std::log(4.0)), CutoffKind::Sharp) == 2.0);
}

TEST_CASE("direct route against the definition") {
    for (int k : {2, 3, 4}) {
        for (u64 d : {3, 10, 36, 97}) {
            for (double X : {500.0, 2345.6}) {
                for (auto cut : {CutoffKind::Sharp, CutoffKind::Smooth}) {
                    const double want = brute_variance(k, d, X, cut);
                    CHECK(variance_direct(k, d, X, cut) == doctest::Approx(want).epsilon(1e-11));
                }
            }
        }
    }
}

TEST_CASE("three routes agree") {
    for (int k : {2, 3}) {
        for (u64 d : {4, 12, 35, 60, 101}) {
            for (double X : {1e3, 1e4}) {
                for (auto cut : {CutoffKind::Sharp, CutoffKind::Smooth}) {
                    const double a = variance_direct(k, d, X, cut);
                    CHECK(variance_characters(k, d, X, cut) == doctest::Approx(a).epsilon(1e-9));
                    CHECK(variance_primitive(k, d, X, cut) == doctest::Approx(a).epsilon(1e-9));
                }
            }
        }
    }
}

TEST_CASE("basic properties") {
    CHECK(variance_direct(3, 1, 1000, CutoffKind::Sharp) == 0.0);
    CHECK(variance_characters(3, 1, 1000, CutoffKind::Smooth) == 0.0);
    for (u64 d : {2, 9, 50}) CHECK(variance_direct(3, d, 3000, CutoffKind::Smooth) >= 0.0);
    CHECK_THROWS(variance_direct(0, 5, 100, CutoffKind::Sharp));
    CHECK_THROWS(variance_direct(3, 0, 100, CutoffKind::Sharp));
    CHECK_THROWS(variance_direct(3, 5, 0.5, CutoffKind::Sharp));

    VarianceOptions tight;
    tight.sieve_budget = 1000;
    CHECK_THROWS_AS(variance_direct(3, 5, 1e4, CutoffKind::Sharp, tight), std::length_error);
    VarianceOptions chars;
    chars.character_budget = 1e5;
    CHECK_THROWS_AS(variance_characters(3, 101, 1e4, CutoffKind::Sharp, chars), std::length_error);
}

TEST_CASE("worker count does not change results") {
    for (auto cut : {CutoffKind::Sharp, CutoffKind::Smooth}) {
        VarianceOptions o;
        o.segment = 1 << 13;
        o.workers = 1;
        const double a = variance_direct(3, 211, 3e5, cut, o);
        const double c1 = variance_characters(3, 31, 5e4, cut, o);
        o.workers = 2;
        CHECK(variance_direct(3, 211, 3e5, cut, o) == a);
        o.workers = 8;
        CHECK(variance_direct(3, 211, 3e5, cut, o) == a);
        CHECK(variance_characters(3, 31, 5e4, cut, o) == c1);
    }
}

TEST_CASE("compensated variance from class sums") {
    // Sums near 1e8 with deviations near 1e-6: plain doubles lose them.
    std::vector<KahanSum> sums(3);
    const double dev[3] = {1e-6, -2e-6, 1e-6};
    for (int i = 0; i < 3; ++i) {
        sums[i].add(1e8);
        sums[i].add(dev[i]);
    }
    CHECK(variance_from_class_sums(sums) == doctest::Approx(6e-12).epsilon(1e-6));
    CHECK(variance_from_class_sums(std::vector<double>{1.0, 3.0}) == 2.0);
    CHECK(variance_from_class_sums(std::vector<double>{}) == 0.0);
}

TEST_CASE("main term") {
    const auto m = main_term(3, 101, 2.5, GammaMethod::Simple);
    const double want = a_k_d(3, 101).value * std::pow(0.5, 8) / 40320.0 * std::pow(101.0, 2.5) *
                        std::pow(std::log(101.0), 8);
    CHECK(m.value == doctest::Approx(want).epsilon(1e-14));
    CHECK(m.gamma_error == 0.0);
    CHECK_THROWS_AS(main_term(3, 101, 1.5, GammaMethod::Simple), std::domain_error);
    const auto p = main_term(3, 101, 1.5, GammaMethod::Piecewise);
    CHECK(p.gamma == gamma_3_piecewise(1.5));
    CHECK_THROWS(main_term(4, 101, 3.5, GammaMethod::Piecewise));
    MainTermOptions mo;
    mo.samples = 200'000;
    const auto mc = main_term(3, 101, 2.5, GammaMethod::MonteCarlo, mo);
    CHECK(mc.gamma_error > 0.0);
    CHECK(std::abs(mc.gamma - m.gamma) < 4 * mc.gamma_error);
}

TEST_CASE("x_from_c") {
    CHECK(x_from_c(10, 3.0) == 1000.0);
    CHECK(x_from_c(4, std::log(10.0) / std::log(4.0)) == 10.0);
    const double x = x_from_c(101, 2.5);
    CHECK(std::abs(x - std::pow(101.0, 2.5)) <= std::pow(101.0, 2.5) * 1e-16);
}

TEST_CASE("experiment report") {
    ExperimentConfig cfg;
    cfg.k = 3;
    cfg.d = 101;
    cfg.c = 2.5;
    const auto r = experiment(cfg);
    CHECK(r.X == doctest::Approx(1.03e5).epsilon(0.01));
    CHECK(r.variance > 0.0);
    CHECK(r.ratio == r.variance / r.main_term);
    CHECK(std::isfinite(r.ratio));
    CHECK(r.ratio > 0.0);
    CHECK(r.weight_id == "bump");
    CHECK(r.code_version == code_version());
    CHECK(r.segment_size == kDefaultSegmentSize);
    auto again = experiment(cfg);
    again.wall_time_s = r.wall_time_s;
    CHECK(again == r);

    ExperimentConfig sharp;
    sharp.k = 2;
    sharp.d = 4;
    sharp.c = std::log(10.0) / std::log(4.0);
    sharp.cutoff = CutoffKind::Sharp;
    sharp.gamma_method = GammaMethod::Simple;
    const auto s = experiment(sharp);
    CHECK(s.variance == 2.0);
    CHECK(s.weight_id == "none");
}

TEST_CASE("string forms") {
    CHECK(cutoff_from_string("sharp") == CutoffKind::Sharp);
    CHECK(to_string(CutoffKind::Smooth) == "smooth");
    CHECK(gamma_method_from_string("mc") == GammaMethod::MonteCarlo);
    CHECK_THROWS(cutoff_from_string("soft"));
    CHECK_THROWS(gamma_method_from_string("exact"));
}
