#pragma once

#include "sublevel/newton.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace sublevel {

enum class LambdaRegime { Large, Small };

struct MeasureEstimate {
    double lambda = 0;
    double value = 0;
    double std_error = 0;
    int J = 0;
    int samples_per_shell = 0;
    int shells_used = 0;
    int shells_skipped = 0;    ///< overflow guard
    double tail_indicator = 0;  ///< contribution of the outermost layer |j|_inf = J, plus skipped volume
    std::vector<std::string> warnings;
};

struct FitResult {
    double rho_hat = 0;
    std::optional<double> a_hat;
    double rho_stderr = 0;
    double residual_rms = 0;
    std::pair<double, double> lambda_range;
    LambdaRegime regime = LambdaRegime::Large;
    std::optional<double> rho_used;  ///< rho fed to the second stage
};

struct FitOptions {
    std::optional<Rational> predicted_rho;  ///< used in stage 2 instead of rho_hat
    std::optional<int> log_power;           ///< known power removed before stage 1
};

enum class DivergenceVerdict { DivergentTrend, Saturating };

struct DivergenceProbe {
    DivergenceVerdict verdict = DivergenceVerdict::Saturating;
    std::vector<MeasureEstimate> partial_sums;
    double slope = 0;
    double slope_stderr = 0;
};

enum class ZeroCheck { Exact, Numerical, NotFound };

/// Worker count: `threads` if positive, else SUBLEVEL_THREADS, else 1.
int resolve_threads(int threads);

/// Half-open dyadic shell index: |x| in (2^{-j-1}, 2^{-j}]. x must be nonzero and finite.
int shell_index(double x);
/// Lebesgue measure of the shell S_j over both signs, 2^{-<j,1>}.
double shell_volume(const std::vector<int>& j);

/// Shells with |j|_inf <= J that can meet D_B.
std::vector<std::vector<int>> enumerate_shells(const DomainSpec& b, int J);

/// Monte Carlo estimate of |{x in D_B : |lambda P(x)| <= 1}| over shells |j|_inf <= J.
MeasureEstimate measure_estimate(const LaurentPolynomial& p, const DomainSpec& b, double lambda, int J, int n,
                                 std::uint64_t seed, int threads = 0);

/// lambda = 2^k, k = k_min..k_max, per-lambda seeds keyed by (seed, k).
std::vector<MeasureEstimate> lambda_sweep(const LaurentPolynomial& p, const DomainSpec& b, LambdaRegime regime,
                                          int k_min, int k_max, int J, int n, std::uint64_t seed, int threads = 0);

FitResult fit_indices(const std::vector<MeasureEstimate>& sweep, const FitOptions& options = {});

DivergenceProbe divergence_probe(const LaurentPolynomial& p, const DomainSpec& b, double lambda,
                                 const std::vector<int>& J_list, int n, std::uint64_t seed, int threads = 0);

/// Is 0 in the closure of P(D_B)? Exact when P(0) = 0 at an origin adherent to D_B, else a sign search.
ZeroCheck check_zero_in_image(const LaurentPolynomial& p, const DomainSpec& b, std::uint64_t seed = 0);

std::string to_string(LambdaRegime r);
std::string to_string(DivergenceVerdict v);
std::string to_string(ZeroCheck z);

}  // namespace sublevel
