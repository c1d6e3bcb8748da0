#include "divvar/weights.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "divvar/quadrature.hpp"

namespace divvar {

namespace {

using cd = std::complex<double>;

constexpr double kOscillatoryThreshold = 50.0;

double raw_bump_squared_integral() {
    auto f = [](double y) {
        if (y <= 1.0 || y >= 2.0) return 0.0;
        return std::exp(-2.0 / ((y - 1.0) * (2.0 - y)));
    };
    return quad::tanh_sinh<double>(f, 1.0, 2.0, 1e-18, 5).value;
}

// In u = log x the transform is a Fourier integral of a smooth compactly
// supported function; panels shorter than half a period of e^{itu}, each
// integrated with Gauss-Legendre at two orders.
MellinValue mellin_phase_panels(const SmoothWeight& w, cd s, double tol) {
    const double width = std::log(2.0);
    auto g = [&](double u) { return w(std::exp(u)) * std::exp(s * u); };
    int panels = std::max(8, 2 * static_cast<int>(std::ceil(std::abs(s.imag()) * width / std::numbers::pi)));
    MellinValue r{s, {}, 0.0, false, "phase-panels"};
    for (int attempt = 0; attempt < 8; ++attempt, panels *= 2) {
        const cd lo = quad::gauss_legendre_composite<cd>(g, 0.0, width, panels, 20);
        const cd hi = quad::gauss_legendre_composite<cd>(g, 0.0, width, panels, 30);
        r.value = hi;
        r.error = std::abs(hi - lo);
        if (r.error <= tol) {
            r.converged = true;
            break;
        }
    }
    return r;
}

}  // namespace

SmoothWeight SmoothWeight::bump() {
    static const double scale = 1.0 / std::sqrt(raw_bump_squared_integral());
    return SmoothWeight(scale, "bump");
}

SmoothWeight SmoothWeight::raw_bump() { return SmoothWeight(1.0, "raw-bump"); }

double SmoothWeight::l2_norm_squared() const {
    auto f = [this](double y) {
        const double v = (*this)(y);
        return v * v;
    };
    return quad::tanh_sinh<double>(f, 1.0, 2.0, 1e-15 * std::max(1.0, scale_ * scale_), 5).value;
}

MellinValue mellin_numeric(const SmoothWeight& w, std::complex<double> s, double tol) {
    if (!(tol >= 1e-13)) throw std::invalid_argument("mellin_numeric: tol must be >= 1e-13");
    if (std::abs(s.imag()) > kOscillatoryThreshold) return mellin_phase_panels(w, s, tol);
    auto f = [&](double x) { return w(x) * std::exp((s - 1.0) * std::log(x)); };
    const auto q = quad::tanh_sinh<cd>(f, 1.0, 2.0, tol, 4);
    return MellinValue{s, q.value, q.error, q.converged, "tanh-sinh"};
}

DecayReport mellin_decay_check(const SmoothWeight& w, int ell, const std::vector<double>& t_list) {
    if (ell < 0 || ell > 6) throw std::invalid_argument("mellin_decay_check: ell must lie in [0, 6]");
    DecayReport rep;
    rep.ell = ell;
    for (double sigma : {-1.0, 0.5, 2.0}) {
        for (double t : t_list) {
            const auto m = mellin_numeric(w, {sigma, t}, 1e-13);
            const double a = std::abs(m.value);
            const double scaled = a * std::pow(1.0 + std::abs(t), ell);
            rep.samples.push_back({sigma, t, a, scaled});
            rep.bound = std::max(rep.bound, scaled);
        }
    }
    return rep;
}

ParsevalResult parseval_check(const SmoothWeight& w, double t_max) {
    if (!(t_max > 0.0)) throw std::invalid_argument("parseval_check: t_max must be positive");
    auto density = [&](double t) { return std::norm(mellin_numeric(w, {0.5, t}, 1e-13).value); };
    const int panels = static_cast<int>(std::ceil(t_max));
    // The integrand is even in t.
    ParsevalResult r;
    r.lhs = quad::gauss_legendre_composite<double>(density, 0.0, t_max, panels, 20) / std::numbers::pi;
    r.rhs = w.l2_norm_squared();
    r.residual = std::abs(r.lhs - r.rhs);
    r.tail_estimate = density(t_max) * t_max / std::numbers::pi;
    r.truncation_ok = r.tail_estimate < 1e-8;
    return r;
}

}  // namespace divvar
