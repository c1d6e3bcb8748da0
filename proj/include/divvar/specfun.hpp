#pragma once

#include <complex>

#include <boost/multiprecision/cpp_int.hpp>

namespace divvar {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

/// Analytic continuation of log Gamma on C minus (-inf, 0], matching
/// log|Gamma| in the real part. On the negative real axis the value is the
/// limit from above. Poles (non-positive integers) throw std::domain_error.
std::complex<double> log_gamma(std::complex<double> s);

/// Parameters of the functional-equation factor
/// (q/pi)^(s-1/2) Gamma((s+a)/2) / Gamma((1-s+a)/2), raised to a power.
struct GammaFactorSpec {
    double q = 1.0;  // modulus; real so formal values such as pi are allowed
    int parity = 0;  // a in {0, 1}
    int power = 1;   // k
};

/// |gamma(s, chi)|^k. The unimodular root number drops out of the modulus.
double gamma_factor_modulus(std::complex<double> s, const GammaFactorSpec& spec);

/// Barnes G at integer m: G(m) = prod_{j=1}^{m-2} j!, G(1) = G(2) = 1.
BigInt barnes_g(int m);

BigInt factorial(int n);

}  // namespace divvar
