#pragma once

#include <utility>
#include <vector>

#include "rewrap/corruption.hpp"
#include "rewrap/fitters.hpp"
#include "rewrap/types.hpp"

namespace rewrap {

struct SscSssConstants {
    int m = 0;
    double lambda_m = 0.0;   // min over |S| = m of lambda_min(X_S X_S^T)
    double Lambda_m = 0.0;   // max over |S| = m of lambda_max(X_S X_S^T)
    bool exact = false;
};

/// Exact SSC/SSS constants by enumerating all C(n, m) column subsets.
/// Guarded to n <= 20.
SscSssConstants ssc_sss_bruteforce(const Matrix& X, int m);

/// High-probability extreme-eigenvalue bounds for a standard Gaussian
/// design: n +/- (1-2eps)^{-1} sqrt(c n d + c' n ln(2/delta)) with
/// c = 24 e^2 ln(3/eps), c' = 24 e^2. Returns (upper, lower).
std::pair<double, double> gaussian_gram_bounds(double n, double d,
                                               double delta = 0.1,
                                               double eps = 0.1);

/// Leading terms of the subset bounds:
///   Lambda_k ~ k (1 + 3e sqrt(6 ln(en/k)))
///   lambda_k ~ n - (n-k)(1 + 3e sqrt(6 ln(en/(n-k))))
/// The unspecified O(sqrt(nd + n ln(1/delta))) remainders are excluded.
std::pair<double, double> ssc_sss_leading_terms(double n, double k);

/// Sub-Gaussian design bounds: lambda_max(Sigma) n + C_K sqrt(dn) + t sqrt(n)
/// and the matching lower bound, t = sqrt(ln(2/delta) / c_K).
std::pair<double, double> subgaussian_gram_bounds(double n, double d,
                                                  double lambda_max_sigma,
                                                  double lambda_min_sigma,
                                                  double C_K, double c_K,
                                                  double delta);

struct BreakdownGrid {
    double alpha_step = 1e-4;
    double tau_step = 1e-3;
    double alpha_max = 0.05;
    double tau_max = 1.0;
};

struct BreakdownResult {
    double alpha_star = 0.0;
    /// Normalized tau' = tau / n at the optimum (theory-corals only).
    std::optional<double> tau_star;
    /// Constraint left-hand sides at the optimum.
    double c1 = 0.0;
    double c2 = 0.0;
    /// Which disjunct binds for the CRR search (1 or 2); 0 for CORALS.
    int branch = 0;
    BreakdownGrid grid;
};

/// g(a) = 1 + 3e sqrt(6 ln(e/a)), the shared subset-bound factor with
/// k = a * n substituted.
double subset_bound_factor(double a);

/// Maximize alpha over the (alpha, tau') grid subject to
///   C1 = 4 alpha g(2 alpha) / (1 + tau') < 1
///   C2 = (2 tau'/(1 + tau')) (sqrt(2 alpha g(2 alpha)) + sqrt(alpha g(alpha))) < 1
BreakdownResult corals_breakdown_search(const BreakdownGrid& grid = {});

/// Maximize alpha subject to 4 alpha g(2 alpha) < 1 OR
/// 2 (sqrt(2 alpha g(2 alpha)) + sqrt(alpha g(alpha))) < 1.
BreakdownResult crr_breakdown_search(const BreakdownGrid& grid = {});

/// Largest prefix of the ascending alpha grid on which the mean l2 error
/// over `repeats` seeded runs stays <= error_threshold. Returns 0 when the
/// first grid point already fails. Fitter failures count as infinite error.
double empirical_breakdown(const FitterSpec& fitter, const GenConfig& gen,
                           AttackKind attack,
                           const std::vector<double>& alpha_grid,
                           double error_threshold, int repeats,
                           int threads = 1);

/// Mean l2 error of a fitter at one corruption level (the inner cell of
/// empirical_breakdown); exposed for calibration and the harness.
double mean_l2_error(const FitterSpec& fitter, const GenConfig& gen,
                     AttackKind attack, double alpha, int repeats,
                     int threads = 1);

}  // namespace rewrap
