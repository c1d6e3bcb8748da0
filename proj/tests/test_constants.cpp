#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "divvar/constants.hpp"

using namespace divvar;

namespace {

double series_factor(int k, u64 p, double s) {
    double total = 0.0;
    for (int j = 0; j < 400; ++j) {
        const double tk = double(binomial(static_cast<u64>(k + j - 1), static_cast<u64>(k - 1)));
        const double term = tk * tk * std::pow(double(p), -s * j);
        total += term;
        if (term < 1e-20 * total) break;
    }
    return total;
}

// gamma_2 on [0, 1): (1 / (2! G(3)^2)) integral over w1 in [0, c] of (2 w1 - c)^2.
double gamma2_slice_oracle(double c) {
    const int n = 2000;
    const double h = c / n;
    double s = 0.0;
    for (int i = 0; i <= n; ++i) {
        const double w = i * h;
        const double f = (2 * w - c) * (2 * w - c);
        s += (i == 0 || i == n ? 1.0 : (i % 2 ? 4.0 : 2.0)) * f;
    }
    return s * h / 3.0 / 2.0;
}

}  // namespace

TEST_CASE("local factors") {
    for (int k = 1; k <= 6; ++k) {
        for (u64 p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29}) {
            for (double s : {1.0, 2.0}) {
                CHECK(local_factor(k, p, s) == doctest::Approx(series_factor(k, p, s)).epsilon(1e-12));
                CHECK(local_factor_series(k, p, s) == doctest::Approx(series_factor(k, p, s)).epsilon(1e-12));
            }
            CHECK(static_cast<double>(local_factor_exact(k, p)) == doctest::Approx(local_factor(k, p)).epsilon(1e-14));
        }
    }
    CHECK(local_factor(1, 2) == doctest::Approx(2.0));
    CHECK(local_factor(2, 3) == doctest::Approx(4.5));
    CHECK_THROWS(local_factor(2, 4));
    CHECK_THROWS(local_factor(0, 3));
}

TEST_CASE("a_k") {
    const auto a2 = a_k_value(2);
    CHECK(a2.method == ConstantMethod::EulerProduct);
    CHECK(std::abs(a2.value - 6.0 / (std::numbers::pi * std::numbers::pi)) < 5e-7);
    CHECK(a2.error_estimate >= std::abs(a2.value - 6.0 / (std::numbers::pi * std::numbers::pi)));
    CHECK(a2.prime_bound == kDefaultPrimeBound);
    CHECK(a_k_value(1).value == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(a_k_value(1).error_estimate == 0.0);
    CHECK_THROWS(a_k_value(2, 10));

    for (int k : {2, 3, 4}) {
        auto prev = a_k_value(k, 50'000);
        for (u64 b : {100'000ull, 200'000ull, 400'000ull}) {
            const auto next = a_k_value(k, b);
            CHECK(next.error_estimate < prev.error_estimate);
            CHECK(std::abs(next.value - prev.value) < prev.error_estimate);
            prev = next;
        }
    }
}

TEST_CASE("a_k(d)") {
    CHECK(a_k_d(2, 1).value == a_k_value(2).value);
    CHECK(a_k_d(2, 3).value == doctest::Approx(a_k_value(2).value / 4.5).epsilon(1e-14));
    CHECK(a_k_d(2, 9).value == a_k_d(2, 3).value);
    std::mt19937_64 rng(21);
    int pairs = 0;
    while (pairs < 50) {
        const u64 a = rng() % 3000 + 2, b = rng() % 3000 + 2;
        if (gcd(a, b) != 1) continue;
        ++pairs;
        for (int k : {2, 3}) {
            CHECK(a_k_d(k, a * b).value * a_k_value(k).value ==
                  doctest::Approx(a_k_d(k, a).value * a_k_d(k, b).value).epsilon(1e-12));
        }
    }
}

TEST_CASE("gamma_k simple and piecewise") {
    CHECK(gamma_k_simple(3, 2.5) == doctest::Approx(std::pow(0.5, 8) / 40320.0).epsilon(1e-15));
    CHECK(gamma_k_simple(1, 0.5) == 1.0);
    CHECK_THROWS_AS(gamma_k_simple(3, 1.5), std::domain_error);
    CHECK_THROWS_AS(gamma_k_simple(3, 3.0), std::domain_error);

    const auto& t3 = gamma_piecewise_table(3);
    CHECK(t3.eval_branch(0, 1) == t3.eval_branch(1, 1));
    CHECK(t3.eval_branch(1, 2) == t3.eval_branch(2, 2));
    CHECK(BigRational(factorial(9)) * t3.integral() == 42);
    CHECK(gamma_3_piecewise(1.0) * 362880.0 == doctest::Approx(9.0).epsilon(1e-15));
    CHECK(gamma_3_piecewise(2.0) * 362880.0 == doctest::Approx(9.0).epsilon(1e-15));
    CHECK(gamma_3_piecewise(0.0) == 0.0);
    CHECK(gamma_3_piecewise(3.0) == 0.0);
    for (double c = 2.0; c < 3.0; c += 0.0625) CHECK(gamma_3_piecewise(c) == gamma_k_simple(3, c));
    CHECK(gamma_3_piecewise_exact(BigRational(5, 2)) == BigRational(1, 256 * 40320));
    CHECK_THROWS(gamma_3_piecewise(3.5));

    const auto& t2 = gamma_piecewise_table(2);
    CHECK(t2.eval(0.5) == doctest::Approx(0.125 / 6.0).epsilon(1e-15));
    CHECK(t2.eval(1.5) == doctest::Approx(0.125 / 6.0).epsilon(1e-15));
    CHECK(BigRational(factorial(4)) * t2.integral() == 2);
    CHECK(gamma_piecewise_table(1).integral() == 1);
    CHECK_THROWS(gamma_piecewise_table(4));

    // Maximum of the middle branch sits at c = 1.5.
    CHECK(gamma_3_piecewise(1.5) > gamma_3_piecewise(1.49));
    CHECK(gamma_3_piecewise(1.5) > gamma_3_piecewise(1.51));
}

TEST_CASE("gamma_k Monte Carlo") {
    const auto v = gamma_k_mc(2, 0.5, 1'000'000, 3, 2);
    CHECK(v.method == ConstantMethod::MonteCarlo);
    CHECK(v.samples == 1'000'000);
    CHECK(v.seed == 3);
    CHECK(v.workers == 2);
    CHECK(std::abs(v.value - gamma2_slice_oracle(0.5)) < 3 * v.error_estimate);
    CHECK(gamma2_slice_oracle(0.5) == doctest::Approx(0.125 / 6.0).epsilon(1e-12));
    for (double c : {2.1, 2.5, 2.9}) {
        const auto m = gamma_k_mc(3, c, 1'000'000, 11);
        CHECK(std::abs(m.value - gamma_k_simple(3, c)) < 3 * m.error_estimate);
    }
    const auto mid = gamma_k_mc(3, 1.5, 1'000'000, 11);
    CHECK(std::abs(mid.value - gamma_3_piecewise(1.5)) < 3 * mid.error_estimate);
    CHECK(gamma_k_mc(1, 0.3, 10'000, 1).value == 1.0);
    CHECK(gamma_k_mc(3, 2.5, 100'000, 5, 1).value == gamma_k_mc(3, 2.5, 100'000, 5, 3).value);
    CHECK_THROWS(gamma_k_mc(6, 2.5, 100'000, 1));
    CHECK_THROWS(gamma_k_mc(3, 3.0, 100'000, 1));
    CHECK_THROWS(gamma_k_mc(3, 2.5, 100, 1));
}

TEST_CASE("g_k and the moment relation") {
    CHECK(g_k(1) == 1);
    CHECK(g_k(2) == 2);
    CHECK(g_k(3) == 42);
    CHECK(g_k(4) == 24024);
    for (int k = 1; k <= 3; ++k) {
        const auto m = gamma_integral_check(k);
        CHECK(m.exact);
        CHECK(m.exact_residual == 0);
    }
    for (int k : {4, 5}) {
        const auto m = gamma_integral_check(k, 2'000'000, 4);
        CHECK_FALSE(m.exact);
        CHECK(m.residual < 4 * m.std_error);
    }
}

TEST_CASE("convolution comparison") {
    const auto one = convolution_compare(2, 1);
    CHECK(one.lhs == one.rhs);
    CHECK(one.relative_gap == 0.0);
    const auto three = convolution_compare(2, 3);
    CHECK(three.lhs == doctest::Approx((a_k_d(2, 3).value + a_k_value(2).value) / 2.0).epsilon(1e-14));
    CHECK(three.rhs == a_k_d(2, 3).value);
    for (int k : {2, 3}) {
        const double g1 = convolution_compare(k, 101).relative_gap;
        const double g2 = convolution_compare(k, 1009).relative_gap;
        const double g3 = convolution_compare(k, 10007).relative_gap;
        CHECK(g1 > g2);
        CHECK(g2 > g3);
    }
}

TEST_CASE("method tags round-trip") {
    for (auto m : {ConstantMethod::EulerProduct, ConstantMethod::ClosedForm, ConstantMethod::MonteCarlo,
                   ConstantMethod::Piecewise, ConstantMethod::Quadrature}) {
        CHECK(constant_method_from_string(to_string(m)) == m);
    }
    CHECK_THROWS(constant_method_from_string("guess"));
}
