#pragma once

// Constants of the conjectural variance main term a_k(d) gamma_k(c) X (log d)^(k^2-1):
// Euler-product local factors, a_k, a_k(d), gamma_k(c) by three routes, and g_k.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "divvar/arith.hpp"
#include "divvar/specfun.hpp"

namespace divvar {

enum class ConstantMethod { EulerProduct, ClosedForm, MonteCarlo, Piecewise, Quadrature };

std::string_view to_string(ConstantMethod m);
ConstantMethod constant_method_from_string(std::string_view s);

struct ConstantValue {
    std::string name;  // "a_k", "a_k(d)", "gamma_k(c)", "g_k"
    double value = 0.0;
    ConstantMethod method = ConstantMethod::ClosedForm;
    double error_estimate = 0.0;
    int k = 0;
    u64 d = 0;
    double c = 0.0;
    u64 prime_bound = 0;
    u64 samples = 0;
    u64 seed = 0;
    int workers = 0;

    friend bool operator==(const ConstantValue&, const ConstantValue&) = default;
};

inline constexpr u64 kDefaultPrimeBound = 1'000'000;

/// sum_j tau_k(p^j)^2 p^(-js) through the closed form
/// (1 - p^-s)^-(2k-1) sum_{j<k} C(k-1, j)^2 p^(-js).
double local_factor(int k, u64 p, double s = 1.0);
/// Same sum by direct summation of the series until the relative tail is below 1e-17.
double local_factor_series(int k, u64 p, double s = 1.0);
/// Closed form at s = 1 in exact rational arithmetic.
BigRational local_factor_exact(int k, u64 p);

/// prod_{p <= prime_bound} (1 - 1/p)^((k-1)^2) sum_{j<k} C(k-1,j)^2 p^-j with a
/// tail bound from log-factor = O(k^4 p^-2).
ConstantValue a_k_value(int k, u64 prime_bound = kDefaultPrimeBound);
/// a_k divided by the local factor at every prime dividing d.
ConstantValue a_k_d(int k, u64 d, u64 prime_bound = kDefaultPrimeBound);

/// (k - c)^(k^2-1) / (k^2-1)! on [k-1, k).
double gamma_k_simple(int k, double c);
BigRational gamma_k_simple_exact(int k, const BigRational& c);

/// Piecewise polynomial with exact rational coefficients (ascending powers).
struct PiecewisePolynomial {
    std::vector<BigRational> breaks;  // branch i covers [breaks[i], breaks[i+1])
    std::vector<std::vector<BigRational>> coeffs;

    BigRational eval(const BigRational& c) const;
    double eval(double c) const;
    /// Value of branch i at c, ignoring the branch interval.
    BigRational eval_branch(std::size_t i, const BigRational& c) const;
    BigRational integral() const;
    double lower() const;
    double upper() const;
};

/// Exact gamma_k tables for k in {1, 2, 3}; k = 3 is the published three-branch polynomial.
const PiecewisePolynomial& gamma_piecewise_table(int k);
double gamma_3_piecewise(double c);
BigRational gamma_3_piecewise_exact(const BigRational& c);

/// Monte Carlo estimate of gamma_k(c) from the Vandermonde slice integral.
/// workers <= 0 uses the OpenMP default; the result does not depend on it.
ConstantValue gamma_k_mc(int k, double c, u64 samples, u64 seed, int workers = 0);

/// g_k = (k^2)! prod_{j<k} j!/(j+k)!, exact.
BigRational g_k(int k);

struct MomentCheck {
    int k = 0;
    double residual = 0.0;
    BigRational exact_residual;  // meaningful when exact
    bool exact = false;
    double std_error = 0.0;
    std::string method;
};

/// |(k^2)! integral_0^k gamma_k(c) dc - g_k|. Exact for k <= 3; for k in {4, 5}
/// the integral is the unconstrained Vandermonde cube integral done by Monte Carlo.
MomentCheck gamma_integral_check(int k, u64 samples = 1'000'000, u64 seed = 1);

struct ConvolutionComparison {
    double lhs = 0.0;
    double rhs = 0.0;
    double relative_gap = 0.0;
};

/// lhs = (1/phi(d)) sum_{d = qr} phi*(q) a_k(r), rhs = a_k(d).
ConvolutionComparison convolution_compare(int k, u64 d, u64 prime_bound = kDefaultPrimeBound);

}  // namespace divvar
