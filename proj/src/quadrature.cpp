#include "divvar/quadrature.hpp"

#include <map>
#include <mutex>
#include <stdexcept>

namespace divvar::quad {

namespace {

constexpr double kTanhSinhTMax = 4.5;

void push_node(TanhSinhLevel& L, double t) {
    const double v = 0.5 * std::numbers::pi * std::sinh(std::abs(t));
    const double e2v = std::exp(2.0 * v);
    const double complement = 2.0 / (e2v + 1.0);
    const double ch = std::cosh(0.5 * std::numbers::pi * std::sinh(t));
    const double w = 0.5 * std::numbers::pi * std::cosh(t) / (ch * ch);
    const double u = t < 0 ? -(1.0 - complement) : (t > 0 ? 1.0 - complement : 0.0);
    L.abscissa.push_back(u);
    L.complement.push_back(complement);
    L.weight.push_back(w);
}

std::vector<TanhSinhLevel> build_tables() {
    std::vector<TanhSinhLevel> tables(kTanhSinhMaxLevel + 1);
    for (int j = -static_cast<int>(kTanhSinhTMax); j <= static_cast<int>(kTanhSinhTMax); ++j) {
        push_node(tables[0], static_cast<double>(j));
    }
    for (int level = 1; level <= kTanhSinhMaxLevel; ++level) {
        const double h = std::ldexp(1.0, -level);
        const int jmax = static_cast<int>(kTanhSinhTMax / h);
        for (int j = -jmax; j <= jmax; ++j) {
            if (j % 2 == 0) continue;
            push_node(tables[level], j * h);
        }
    }
    return tables;
}

GaussLegendre build_gauss_legendre(int n) {
    GaussLegendre gl;
    gl.node.resize(n);
    gl.weight.resize(n);
    for (int i = 0; i < n; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        double p0 = 1.0, p1 = x;
        for (int k = 2; k <= n; ++k) {
            const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        dp = n * (x * p1 - p0) / (x * x - 1.0);
        gl.node[i] = x;
        gl.weight[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return gl;
}

}  // namespace

const std::vector<TanhSinhLevel>& tanh_sinh_tables() {
    static const std::vector<TanhSinhLevel> tables = build_tables();
    return tables;
}

const GaussLegendre& gauss_legendre(int n) {
    if (n < 2 || n > 200) throw std::invalid_argument("gauss_legendre: n must lie in [2, 200]");
    static std::mutex mu;
    static std::map<int, GaussLegendre> cache;
    std::lock_guard lock(mu);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, build_gauss_legendre(n)).first;
    return it->second;
}

}  // namespace divvar::quad
