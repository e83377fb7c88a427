#pragma once

#include "rewrap/types.hpp"

namespace rewrap {

struct SolveOptions {
    /// Use a rank-revealing pseudo-inverse (minimum-norm solution) when the
    /// Gram matrix is numerically singular instead of throwing SingularGram.
    bool allow_pinv = false;
    /// Reciprocal condition number below this is treated as singular.
    double rcond_floor = 1e-12;
};

/// Factorization of a symmetric PSD d x d matrix A (a Gram matrix, possibly
/// penalized). Solves go through an eigendecomposition, which doubles as the
/// condition estimate and as the rank-revealing pseudo-inverse fallback.
class GramSolver {
public:
    GramSolver(const Matrix& A, const SolveOptions& opts = {});

    Vector solve(const Vector& rhs) const;
    double rcond() const { return rcond_; }

private:
    Eigen::SelfAdjointEigenSolver<Matrix> es_;
    Vector inv_eigs_;
    double rcond_ = 0.0;
};

/// Ordinary least squares: (X X^T)^{-1} X y.
ModelCoef ols_fit(const RegressionDataset& data, const SolveOptions& opts = {});

/// Closed-form prior-penalized ridge: (X X^T + M)^{-1} [X (y - b) + M w0].
ModelCoef ridge_with_prior(const RegressionDataset& data,
                           const SparseCorruption& b, const PriorSpec& prior,
                           const SolveOptions& opts = {});

/// y - X^T w.
Vector residuals(const RegressionDataset& data, const ModelCoef& w);

}  // namespace rewrap
