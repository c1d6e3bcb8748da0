#include "divvar/specfun.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace divvar {

namespace {

using cd = std::complex<double>;

// Lanczos coefficients, g = 7, n = 9.
constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczos{
    0.99999999999980993,  676.5203681218851,   -1259.1392167224028,
    771.32342877765313,   -176.61502916214059, 12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

const double kHalfLog2Pi = 0.5 * std::log(2.0 * std::numbers::pi);

// Valid for Re s >= 1/2.
cd log_gamma_right(cd s) {
    const cd z = s - 1.0;
    cd series = kLanczos[0];
    for (std::size_t i = 1; i < kLanczos.size(); ++i) series += kLanczos[i] / (z + static_cast<double>(i));
    const cd t = z + kLanczosG + 0.5;
    return kHalfLog2Pi + (z + 0.5) * std::log(t) - t + std::log(series);
}

// Analytic log sin(pi z) on the closed upper half plane:
//   sin(pi z) = (i/2) e^{-i pi z} (1 - e^{2 pi i z}),
// and 1 - e^{2 pi i z} has positive real part there, so its principal log is
// continuous. Normalised so the value is real at z = 1/2 + iy.
cd log_sin_pi_upper(cd z) {
    const double x = z.real(), y = z.imag();
    const cd e = std::exp(cd{0.0, 2.0 * std::numbers::pi} * z);
    return cd{-std::log(2.0) + std::numbers::pi * y, std::numbers::pi * (0.5 - x)} + std::log(1.0 - e);
}

}  // namespace

std::complex<double> log_gamma(std::complex<double> s) {
    if (s.imag() == 0.0 && s.real() <= 0.0 && s.real() == std::floor(s.real())) {
        throw std::domain_error("log_gamma: pole at non-positive integer");
    }
    if (s.real() >= 0.5) return log_gamma_right(s);
    // Reflection: log G(s) = log pi - log sin(pi s) - log G(1 - s), with the
    // analytic branch of log sin; the lower half plane follows by conjugation.
    if (s.imag() < 0.0) return std::conj(log_gamma(std::conj(s)));
    return std::log(std::numbers::pi) - log_sin_pi_upper(s) - log_gamma_right(1.0 - s);
}

double gamma_factor_modulus(std::complex<double> s, const GammaFactorSpec& spec) {
    if (spec.parity != 0 && spec.parity != 1) throw std::invalid_argument("gamma_factor_modulus: parity must be 0 or 1");
    if (spec.q <= 0.0) throw std::invalid_argument("gamma_factor_modulus: q must be positive");
    const cd top = (s + static_cast<double>(spec.parity)) / 2.0;
    const cd bottom = (1.0 - s + static_cast<double>(spec.parity)) / 2.0;
    for (cd z : {top, bottom}) {
        if (z.real() <= 0.5) {
            const double nearest = std::round(z.real());
            if (nearest <= 0.0 && std::abs(z - cd{nearest, 0.0}) < 1e-8) {
                throw std::domain_error("gamma_factor_modulus: argument within 1e-8 of a gamma pole");
            }
        }
    }
    const double log_mod = (s.real() - 0.5) * std::log(spec.q / std::numbers::pi) + log_gamma(top).real() -
                           log_gamma(bottom).real();
    return std::exp(static_cast<double>(spec.power) * log_mod);
}

BigInt factorial(int n) {
    if (n < 0) throw std::invalid_argument("factorial: negative argument");
    BigInt r = 1;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}

BigInt barnes_g(int m) {
    if (m < 1 || m > 30) throw std::invalid_argument("barnes_g: m must lie in [1, 30]");
    BigInt r = 1, f = 1;
    for (int j = 1; j <= m - 2; ++j) {
        f *= j;
        r *= f;
    }
    return r;
}

}  // namespace divvar
