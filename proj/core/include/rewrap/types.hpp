#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <vector>

#include "rewrap/errors.hpp"

namespace rewrap {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Regression coefficient vector (w*, w-hat, prior means, ...).
using ModelCoef = Eigen::VectorXd;

struct DatasetMeta {
    double sigma = 0.0;
    std::uint64_t seed = 0;
    std::optional<Vector> w_true;
    std::optional<std::vector<int>> corruption_support;  // sorted ascending
};

/// Column-per-sample data model: X is d x n, y has length n.
struct RegressionDataset {
    Matrix X;  // d rows (features) x n columns (samples)
    Vector y;  // n responses
    DatasetMeta meta;

    Eigen::Index n() const { return X.cols(); }
    Eigen::Index d() const { return X.rows(); }

    /// Throws DimensionMismatch / ParameterOutOfRange on a malformed dataset.
    void validate() const;
};

/// k-sparse corruption vector. The support is always derived from b itself.
struct SparseCorruption {
    Vector b;
    int k = 0;

    static SparseCorruption zero(Eigen::Index n) {
        return SparseCorruption{Vector::Zero(n), 0};
    }

    std::vector<int> support() const;
    int nnz() const;

    /// Checks nnz(b) <= k.
    void validate() const;
};

/// Normal prior on w: mean w0 and quadratic penalty M. M is either tau * I
/// (the common case) or an explicit symmetric PSD matrix.
class PriorSpec {
public:
    /// Zero-mean, zero-penalty prior (no constraint at all).
    static PriorSpec none(Eigen::Index d);

    /// M = tau * I. tau must be >= 0.
    static PriorSpec isotropic(ModelCoef mean, double tau);

    /// Explicit penalty matrix; validated for symmetry (1e-10 relative) and
    /// positive semi-definiteness (smallest eigenvalue >= -1e-8 * ||M||).
    static PriorSpec with_matrix(ModelCoef mean, Matrix M);

    const ModelCoef& mean() const { return mean_; }
    bool is_isotropic() const { return !M_.has_value(); }
    double tau() const { return tau_; }

    /// Materialized d x d penalty matrix.
    Matrix matrix() const;

    /// M * v without materializing tau * I.
    Vector apply(const Vector& v) const;

    /// True when the penalty is exactly zero.
    bool is_zero_penalty() const;

    Eigen::Index dim() const { return mean_.size(); }

private:
    PriorSpec(ModelCoef mean, double tau, std::optional<Matrix> M)
        : mean_(std::move(mean)), tau_(tau), M_(std::move(M)) {}

    ModelCoef mean_;
    double tau_ = 0.0;
    std::optional<Matrix> M_;
};

struct TraceEntry {
    double w_change = 0.0;
    std::optional<double> objective;
};

/// Result of any fitter. `trace` carries one entry per (outer) iteration;
/// `iterates` is populated only when iterate recording was requested.
struct FitReport {
    ModelCoef w_hat;
    std::optional<SparseCorruption> b_hat;
    std::optional<std::vector<int>> active_set;
    int outer_iters = 0;
    int inner_iters_total = 0;
    bool converged = false;
    std::vector<TraceEntry> trace;
    std::vector<Vector> iterates;
};

/// Round-to-nearest, half away from zero. Used wherever a fractional budget
/// (alpha * n, keep_fraction * n) becomes an integer count.
inline int round_half_up(double x) {
    return static_cast<int>(std::floor(x + 0.5));
}

}  // namespace rewrap
