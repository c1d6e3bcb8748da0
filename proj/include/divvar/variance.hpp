#pragma once

// Variance of tau_k over reduced residue classes mod d, sharp (n <= X) or
// smoothed (weight w(n/X) supported in [1, 2]):
//
//   V = sum_{(a,d)=1} | S_a - S / phi(d) |^2,   S_a = sum_{n = a (d)} tau_k(n) omega(n).
//
// Three routes: class sums directly, nonprincipal characters mod d, and
// primitive characters mod q over the splittings d = qr. They agree as
// algebra; the tests check that they agree numerically.

#include <cstdint>
#include <string>
#include <string_view>

#include "divvar/constants.hpp"
#include "divvar/kernels.hpp"

namespace divvar {

std::string_view code_version();

std::string_view to_string(CutoffKind c);
CutoffKind cutoff_from_string(std::string_view s);

enum class GammaMethod { Simple, Piecewise, MonteCarlo };
std::string_view to_string(GammaMethod m);
GammaMethod gamma_method_from_string(std::string_view s);

struct VarianceOptions {
    std::size_t segment = kDefaultSegmentSize;
    int workers = 0;  // <= 0: OpenMP default
    /// Largest number of integers the sieve may visit.
    u64 sieve_budget = 4'000'000'000ull;
    /// Largest (range length) x (number of characters) for the character routes.
    double character_budget = 5e10;
    SmoothWeight weight = SmoothWeight::bump();
};

WeightedRange make_range(double X, CutoffKind cutoff, const SmoothWeight& w = SmoothWeight::bump());

/// V from per-class sums: compensated total, mean, and squared deviations.
double variance_from_class_sums(const std::vector<double>& sums);
/// Same, keeping each sum's compensation so that deviations far below the
/// size of the sums survive.
double variance_from_class_sums(const std::vector<KahanSum>& sums);

double variance_direct(int k, u64 d, double X, CutoffKind cutoff, const VarianceOptions& opt = {});
double variance_characters(int k, u64 d, double X, CutoffKind cutoff, const VarianceOptions& opt = {});
double variance_primitive(int k, u64 d, double X, CutoffKind cutoff, const VarianceOptions& opt = {});

struct MainTermOptions {
    u64 prime_bound = kDefaultPrimeBound;
    u64 samples = 10'000'000;
    u64 seed = 20240601;
    int workers = 0;
};

struct MainTerm {
    double value = 0.0;
    double a_k_d = 0.0;
    double gamma = 0.0;
    double gamma_error = 0.0;
    GammaMethod method = GammaMethod::Simple;
};

/// a_k(d) gamma_k(c) d^c (log d)^(k^2-1).
MainTerm main_term(int k, u64 d, double c, GammaMethod method, const MainTermOptions& opt = {});

/// d^c, snapped to the nearest integer when within 4 ulp of it.
double x_from_c(u64 d, double c);

struct ExperimentConfig {
    int k = 3;
    u64 d = 101;
    double c = 2.5;
    CutoffKind cutoff = CutoffKind::Smooth;
    GammaMethod gamma_method = GammaMethod::Simple;
    MainTermOptions constants;
    VarianceOptions variance;
};

struct VarianceReport {
    int k = 0;
    u64 d = 0;
    double c = 0.0;
    double X = 0.0;
    CutoffKind cutoff = CutoffKind::Sharp;
    std::string weight_id;
    double variance = 0.0;
    double main_term = 0.0;
    double ratio = 0.0;  // NaN when main_term <= 0
    double a_k_d = 0.0;
    double gamma = 0.0;
    GammaMethod gamma_method = GammaMethod::Simple;
    double gamma_error = 0.0;
    u64 prime_bound = 0;
    u64 samples = 0;
    u64 seed = 0;
    int workers = 0;
    std::size_t segment_size = 0;
    double wall_time_s = 0.0;
    std::string code_version;

    friend bool operator==(const VarianceReport&, const VarianceReport&) = default;
};

VarianceReport experiment(const ExperimentConfig& cfg);

}  // namespace divvar
