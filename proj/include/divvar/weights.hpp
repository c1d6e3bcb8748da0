#pragma once

// Smooth cutoff weights supported in [1, 2] and their Mellin transforms.

#include <cmath>
#include <complex>
#include <string>
#include <vector>

namespace divvar {

/// w(y) = scale * exp(-1 / ((y - 1)(2 - y))) on (1, 2), zero elsewhere.
class SmoothWeight {
public:
    /// Scale fixed so that the integral of w^2 is 1.
    static SmoothWeight bump();
    /// Scale 1, not normalized.
    static SmoothWeight raw_bump();

    double operator()(double y) const {
        if (y <= 1.0 || y >= 2.0) return 0.0;
        return scale_ * std::exp(-1.0 / ((y - 1.0) * (2.0 - y)));
    }

    SmoothWeight scaled(double factor) const { return SmoothWeight(scale_ * factor, id_ + "*" + std::to_string(factor)); }

    double scale() const { return scale_; }
    double lower() const { return 1.0; }
    double upper() const { return 2.0; }
    /// Integral of w^2 by quadrature.
    double l2_norm_squared() const;
    const std::string& id() const { return id_; }

private:
    SmoothWeight(double scale, std::string id) : scale_(scale), id_(std::move(id)) {}
    double scale_;
    std::string id_;
};

inline constexpr double kDefaultMellinTol = 1e-10;

struct MellinValue {
    std::complex<double> s;
    std::complex<double> value;
    double error = 0.0;
    bool converged = false;
    std::string method;  // "tanh-sinh" or "phase-panels"
};

/// M[w](s) = integral over (1, 2) of w(x) x^(s-1) dx. tol is absolute and must
/// be >= 1e-13. Non-convergence is reported via `converged` with the best value.
MellinValue mellin_numeric(const SmoothWeight& w, std::complex<double> s, double tol = kDefaultMellinTol);

struct DecaySample {
    double sigma;
    double t;
    double abs_value;
    double scaled;  // |M[w](sigma + it)| (1 + |t|)^ell
};

struct DecayReport {
    int ell = 0;
    double bound = 0.0;  // sup of scaled over all samples
    std::vector<DecaySample> samples;
};

/// sup over t in t_list, sigma in {-1, 1/2, 2} of |M[w](sigma + it)| (1 + |t|)^ell.
DecayReport mellin_decay_check(const SmoothWeight& w, int ell, const std::vector<double>& t_list);

struct ParsevalResult {
    double lhs = 0.0;  // (1/2pi) integral over |t| <= t_max of |M[w](1/2 + it)|^2
    double rhs = 0.0;  // integral of w^2
    double residual = 0.0;
    double tail_estimate = 0.0;
    bool truncation_ok = false;
};

ParsevalResult parseval_check(const SmoothWeight& w, double t_max = 200.0);

}  // namespace divvar
