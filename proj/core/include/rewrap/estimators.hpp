#pragma once

#include <optional>

#include "rewrap/linalg.hpp"
#include "rewrap/types.hpp"

namespace rewrap {

/// Bounded loss for M-estimation. sigma_hat == 0 means "estimate the scale
/// as 1.4826 * MAD of the OLS residuals at fit time".
struct RhoSpec {
    enum class Kind { kTukey, kAndrews };

    Kind kind = Kind::kTukey;
    double c = 4.6851;
    double sigma_hat = 0.0;

    static RhoSpec tukey(double c = 4.6851, double sigma_hat = 0.0) {
        return RhoSpec{Kind::kTukey, c, sigma_hat};
    }
    static RhoSpec andrews(double c = 1.338, double sigma_hat = 0.0) {
        return RhoSpec{Kind::kAndrews, c, sigma_hat};
    }
};

/// Tukey: rho(z) = (c^2/6) [1 - (1 - z^2/c^2)^3] for |z| <= c, else c^2/6.
/// Andrews: rho(z) = c^2 [1 - cos(z/c)] for |z| <= pi c, else 2 c^2.
double rho_eval(const RhoSpec& rho, double z);

/// psi = rho'.
double psi_eval(const RhoSpec& rho, double z);

/// IRLS weight psi(z)/z, continued by its z -> 0 limit (1 for both kinds).
double weight_eval(const RhoSpec& rho, double z);

/// Robust scale: 1.4826 * median(|r - median(r)|).
double mad_sigma(const Vector& r);

struct InnerConfig {
    double tol = 1e-4;
    int max_inner = 400;
    /// Corruption budget k for TRIP/CRR.
    int k = 0;
    /// Fraction (1 - beta) of samples kept per TORRENT step.
    double keep_fraction = 1.0;
    /// Record the per-step iterate sequence (b for TRIP, w for the others)
    /// into FitReport::iterates.
    bool record_iterates = false;
    SolveOptions solve;
};

/// Hard-thresholding regression with a quadratic prior penalty. Iterates
///   b <- HT_k(P_MX b + (I - P_MX) y - P_MM w0)
/// from b = 0 until ||b - b_prev|| <= tol or max_inner, where
/// P_MX = X^T (X X^T + M)^{-1} X and P_MM = X^T (X X^T + M)^{-1} M, both
/// applied through d-dimensional solves. Returns w = (X X^T)^{-1} X (y - b).
FitReport trip_fit(const RegressionDataset& data, const PriorSpec& prior,
                   const InnerConfig& cfg);

/// TRIP with M = 0.
FitReport crr_fit(const RegressionDataset& data, const InnerConfig& cfg);

/// Alternating active-set least squares. Each step solves the (optionally
/// prior-penalized) LS problem on the active set, recomputes residuals, and
/// keeps the round(keep_fraction * n) smallest. Stops when the active set
/// stabilizes, the coefficient change drops below tol, or max_inner.
FitReport torrent_inner(const RegressionDataset& data,
                        const std::optional<PriorSpec>& prior,
                        const InnerConfig& cfg);

/// IRLS for min_w sum_i rho((y_i - x_i^T w)/sigma_hat)
///               + 1/2 (w - w0)^T M (w - w0).
/// Starts from w0 when a prior is given, otherwise from OLS.
FitReport mest_fit(const RegressionDataset& data, const RhoSpec& rho,
                   const std::optional<PriorSpec>& prior,
                   const InnerConfig& cfg);

/// (P_MX - I)(y - b) + P_MM w_t.
Vector f_corals_gradient(const RegressionDataset& data, const PriorSpec& prior,
                         const Vector& b, const ModelCoef& w_t,
                         const SolveOptions& opts = {});

/// (P_X - I)(y - b).
Vector f_crr_gradient(const RegressionDataset& data, const Vector& b,
                      const SolveOptions& opts = {});

/// Momentum-style split of the TRIP gradient at state (b, b_prev_hat) with
/// M = tau * I and w_t = (X X^T)^{-1} X (y - b_prev_hat):
///   approx_grad = (n/(n+tau) P_X - I)(y - b) + tau/(n+tau) P_X (y - b_prev_hat)
///   C           = f_corals_gradient - approx_grad
struct MomentumDecomposition {
    Vector approx_grad;
    Vector C;
    double c_norm = 0.0;
    double rel_c = 0.0;
};

MomentumDecomposition momentum_decomposition(const RegressionDataset& data,
                                             double tau, const Vector& b,
                                             const Vector& b_prev_hat,
                                             const SolveOptions& opts = {});

}  // namespace rewrap
