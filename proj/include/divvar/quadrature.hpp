#pragma once

// Fixed-interval quadrature used by the weight and Mellin code: level-doubling
// tanh-sinh (double-exponential) and composite Gauss-Legendre.

#include <cmath>
#include <cstddef>
#include <numbers>
#include <span>
#include <vector>

namespace divvar::quad {

template <class T>
struct Result {
    T value{};
    double error = 0.0;
    int evaluations = 0;
    bool converged = false;
};

struct TanhSinhLevel {
    // Offsets u in (-1, 1) mapped from t = j h, only the points new at this level.
    std::vector<double> abscissa;
    std::vector<double> complement;  // 1 - |abscissa|, kept for endpoint accuracy
    std::vector<double> weight;
};

/// Node tables for levels 0..kTanhSinhMaxLevel; built once, read-only after.
inline constexpr int kTanhSinhMaxLevel = 10;
const std::vector<TanhSinhLevel>& tanh_sinh_tables();

/// Integrates f over (a, b). Stops once two successive levels differ by at
/// most tol (absolute) after at least min_level refinements.
template <class T, class F>
Result<T> tanh_sinh(F&& f, double a, double b, double tol, int min_level = 3) {
    const auto& tables = tanh_sinh_tables();
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    Result<T> r;
    T sum{};
    T prev{};
    double h = 1.0;
    for (int level = 0; level <= kTanhSinhMaxLevel; ++level) {
        const auto& L = tables[level];
        T part{};
        for (std::size_t i = 0; i < L.abscissa.size(); ++i) {
            const double u = L.abscissa[i];
            const double x = u < 0 ? a + half * L.complement[i] : (u > 0 ? b - half * L.complement[i] : mid);
            part += L.weight[i] * f(x);
            ++r.evaluations;
        }
        sum += part;
        if (level > 0) h *= 0.5;
        const T estimate = half * h * sum;
        if (level > 0) {
            r.error = std::abs(estimate - prev);
            r.value = estimate;
            if (level >= min_level && r.error <= tol) {
                r.converged = true;
                return r;
            }
        }
        prev = estimate;
    }
    return r;
}

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussLegendre {
    std::vector<double> node;
    std::vector<double> weight;
};
const GaussLegendre& gauss_legendre(int n);

/// Composite Gauss-Legendre over [a, b] split into `panels` equal pieces.
template <class T, class F>
T gauss_legendre_composite(F&& f, double a, double b, int panels, int n) {
    const auto& gl = gauss_legendre(n);
    const double width = (b - a) / panels;
    T acc{};
    for (int p = 0; p < panels; ++p) {
        const double lo = a + p * width;
        const double c = lo + 0.5 * width;
        T part{};
        for (int i = 0; i < n; ++i) part += gl.weight[i] * f(c + 0.5 * width * gl.node[i]);
        acc += 0.5 * width * part;
    }
    return acc;
}

}  // namespace divvar::quad
