#include "rewrap/linalg.hpp"

#include <cmath>

namespace rewrap {

GramSolver::GramSolver(const Matrix& A, const SolveOptions& opts) {
    es_.compute(A);
    if (es_.info() != Eigen::Success)
        throw SingularGram("gram: eigendecomposition failed");
    const Vector& eigs = es_.eigenvalues();
    const double emax = eigs.cwiseAbs().maxCoeff();
    const double emin = eigs.cwiseAbs().minCoeff();
    rcond_ = emax > 0.0 ? emin / emax : 0.0;
    const bool singular = rcond_ < opts.rcond_floor || eigs.minCoeff() <= 0.0;
    if (singular && !opts.allow_pinv)
        throw SingularGram("gram: matrix numerically singular (rcond = " +
                           std::to_string(rcond_) + ")");
    inv_eigs_.resize(eigs.size());
    const double cutoff = emax * opts.rcond_floor;
    for (Eigen::Index i = 0; i < eigs.size(); ++i)
        inv_eigs_[i] = eigs[i] > cutoff ? 1.0 / eigs[i] : 0.0;
}

Vector GramSolver::solve(const Vector& rhs) const {
    return es_.eigenvectors() *
           (inv_eigs_.asDiagonal() * (es_.eigenvectors().transpose() * rhs));
}

ModelCoef ols_fit(const RegressionDataset& data, const SolveOptions& opts) {
    data.validate();
    const Matrix gram = data.X * data.X.transpose();
    GramSolver solver(gram, opts);
    return solver.solve(data.X * data.y);
}

ModelCoef ridge_with_prior(const RegressionDataset& data,
                           const SparseCorruption& b, const PriorSpec& prior,
                           const SolveOptions& opts) {
    data.validate();
    if (b.b.size() != data.n())
        throw DimensionMismatch("ridge: corruption length != n");
    if (prior.dim() != data.d())
        throw DimensionMismatch("ridge: prior dimension != d");
    const Matrix A = data.X * data.X.transpose() + prior.matrix();
    GramSolver solver(A, opts);
    return solver.solve(data.X * (data.y - b.b) + prior.apply(prior.mean()));
}

Vector residuals(const RegressionDataset& data, const ModelCoef& w) {
    if (w.size() != data.d())
        throw DimensionMismatch("residuals: w length != d");
    return data.y - data.X.transpose() * w;
}

}  // namespace rewrap
