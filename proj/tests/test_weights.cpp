#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "divvar/weights.hpp"

using namespace divvar;
using C = std::complex<double>;

namespace {

// Composite Simpson on (1, 2); the integrands vanish to all orders at both ends.
template <class F>
auto simpson(F f, int n) {
    const double h = 1.0 / n;
    decltype(f(1.5)) s = f(1.0) + f(2.0);
    for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * f(1.0 + i * h);
    return s * (h / 3.0);
}

C mellin_oracle(const SmoothWeight& w, C s, int n = 400'000) {
    return simpson([&](double x) { return w(x) * std::pow(C(x), s - 1.0); }, n);
}

}  // namespace

TEST_CASE("support and normalization") {
    const auto w = SmoothWeight::bump();
    CHECK(w(1.0) == 0.0);
    CHECK(w(2.0) == 0.0);
    CHECK(w(0.3) == 0.0);
    CHECK(w(7.0) == 0.0);
    CHECK(w(std::nextafter(1.0, 0.0)) == 0.0);
    CHECK(w(1.5) > 0.0);
    CHECK(std::abs(w.l2_norm_squared() - 1.0) < 1e-10);
    CHECK(std::abs(simpson([&](double y) { return w(y) * w(y); }, 20'000) - 1.0) < 1e-10);
    const double raw = simpson([](double y) { return y <= 1 || y >= 2 ? 0.0 : std::exp(-2.0 / ((y - 1) * (2 - y))); }, 20'000);
    CHECK(w(1.5) == doctest::Approx(std::exp(-4.0) / std::sqrt(raw)).epsilon(1e-11));
    CHECK(w.id() == "bump");
    CHECK(SmoothWeight::raw_bump().id() != w.id());
}

TEST_CASE("mellin against Simpson") {
    const auto w = SmoothWeight::bump();
    for (C s : {C(1.0, 0.0), C(0.5, 3.0), C(2.0, -10.0), C(-1.0, 40.0), C(0.5, 60.0), C(0.5, 120.0), C(2.0, 200.0)}) {
        const auto m = mellin_numeric(w, s);
        CHECK(m.converged);
        CHECK(m.error <= 1e-10);
        CHECK(std::abs(m.value - mellin_oracle(w, s)) < 1e-10);
    }
    CHECK(mellin_numeric(w, C(0.5, 10.0)).method == "tanh-sinh");
    CHECK(mellin_numeric(w, C(0.5, 80.0)).method == "phase-panels");
}

TEST_CASE("mellin properties") {
    const auto w = SmoothWeight::bump();
    const auto one = mellin_numeric(w, 1.0);
    CHECK(one.value.real() > 0.0);
    CHECK(one.value.imag() == 0.0);
    CHECK(std::abs(one.value - mellin_numeric(w, C(1.0, 1e-9)).value) <= 1e-8);
    CHECK(std::abs(mellin_numeric(w, C(0.5, 40.0)).value) < std::abs(mellin_numeric(w, C(0.5, 10.0)).value));
    for (double s : {1.0, 1.25, 3.0, 10.0}) {
        const auto m = mellin_numeric(w, s);
        CHECK(m.value.imag() == 0.0);
        CHECK(m.value.real() > 0.0);
    }
    for (C s : {C(0.5, 5.0), C(0.5, 55.0), C(-1.0, 150.0)}) {
        const auto a = mellin_numeric(w, s, 1e-8);
        const auto b = mellin_numeric(w, s, 5e-9);
        CHECK(std::abs(a.value - b.value) <= std::max(a.error, 1e-15));
    }
    CHECK_THROWS_AS(mellin_numeric(w, 1.0, 1e-14), std::invalid_argument);
}

TEST_CASE("decay report") {
    const auto w = SmoothWeight::bump();
    const auto r0 = mellin_decay_check(w, 0, {0.0, 10.0});
    const double l1 = simpson([&](double y) { return w(y); }, 20'000);
    for (const auto& s : r0.samples) {
        if (s.sigma <= 1.0) CHECK(s.abs_value <= l1 * (1 + 1e-12));
    }
    const auto r3 = mellin_decay_check(w, 3, {10.0, 20.0, 40.0});
    CHECK(r3.samples.size() == 9);
    CHECK(std::isfinite(r3.bound));
    double lo = 1e300, hi = 0;
    for (const auto& s : r3.samples) {
        if (s.sigma != 0.5) continue;
        lo = std::min(lo, s.scaled);
        hi = std::max(hi, s.scaled);
    }
    CHECK(hi / lo <= 10.0);
    const double a = std::abs(mellin_numeric(w, C(0.5, 10.0)).value);
    const double b = std::abs(mellin_numeric(w, C(0.5, 20.0)).value);
    CHECK(a / b >= 2.0);
    CHECK_THROWS(mellin_decay_check(w, 7, {1.0}));
}

TEST_CASE("parseval") {
    const auto w = SmoothWeight::bump();
    const auto p = parseval_check(w);
    CHECK(p.residual < 1e-6);
    CHECK(p.truncation_ok);
    CHECK(p.rhs == doctest::Approx(1.0).epsilon(1e-10));
    const auto p2 = parseval_check(w.scaled(2.0));
    CHECK(std::abs(p2.lhs - 4.0 * p.lhs) < 1e-6);
    CHECK(p2.residual < 4e-6);
    const auto raw = parseval_check(SmoothWeight::raw_bump());
    CHECK(raw.rhs != doctest::Approx(1.0));
    CHECK(raw.residual < 1e-6 * raw.rhs);
}
