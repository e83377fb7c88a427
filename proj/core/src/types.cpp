#include "rewrap/types.hpp"

#include <cmath>

namespace rewrap {

void RegressionDataset::validate() const {
    if (X.cols() != y.size())
        throw DimensionMismatch("dataset: X has " + std::to_string(X.cols()) +
                                " columns but y has " + std::to_string(y.size()) +
                                " entries");
    if (n() < 1 || d() < 1)
        throw ParameterOutOfRange("dataset: need n >= 1 and d >= 1");
    if (meta.w_true && meta.w_true->size() != d())
        throw DimensionMismatch("dataset: w_true length != d");
    if (meta.corruption_support) {
        const auto& s = *meta.corruption_support;
        if (static_cast<Eigen::Index>(s.size()) > n())
            throw ParameterOutOfRange("dataset: corruption support larger than n");
        for (const int i : s)
            if (i < 0 || i >= n())
                throw ParameterOutOfRange("dataset: corruption index out of [0, n)");
    }
}

std::vector<int> SparseCorruption::support() const {
    std::vector<int> s;
    for (Eigen::Index i = 0; i < b.size(); ++i)
        if (b[i] != 0.0) s.push_back(static_cast<int>(i));
    return s;
}

int SparseCorruption::nnz() const {
    int c = 0;
    for (Eigen::Index i = 0; i < b.size(); ++i)
        if (b[i] != 0.0) ++c;
    return c;
}

void SparseCorruption::validate() const {
    if (k < 0) throw BudgetOutOfRange("corruption: k < 0");
    if (nnz() > k) throw BudgetOutOfRange("corruption: more than k nonzeros");
}

PriorSpec PriorSpec::none(Eigen::Index d) {
    return PriorSpec(Vector::Zero(d), 0.0, std::nullopt);
}

PriorSpec PriorSpec::isotropic(ModelCoef mean, double tau) {
    if (tau < 0.0 || !std::isfinite(tau))
        throw ParameterOutOfRange("prior: tau must be finite and >= 0");
    return PriorSpec(std::move(mean), tau, std::nullopt);
}

PriorSpec PriorSpec::with_matrix(ModelCoef mean, Matrix M) {
    if (M.rows() != M.cols() || M.rows() != mean.size())
        throw DimensionMismatch("prior: M must be d x d");
    const double scale = M.norm();
    if (scale > 0.0) {
        const double asym = (M - M.transpose()).norm();
        if (asym > 1e-10 * scale)
            throw ParameterOutOfRange("prior: M is not symmetric");
    }
    Eigen::SelfAdjointEigenSolver<Matrix> es(M, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -1e-8 * scale)
        throw ParameterOutOfRange("prior: M is not positive semi-definite");
    return PriorSpec(std::move(mean), 0.0, std::move(M));
}

Matrix PriorSpec::matrix() const {
    if (M_) return *M_;
    return tau_ * Matrix::Identity(dim(), dim());
}

Vector PriorSpec::apply(const Vector& v) const {
    if (M_) return *M_ * v;
    return tau_ * v;
}

bool PriorSpec::is_zero_penalty() const {
    if (M_) return M_->isZero(0.0);
    return tau_ == 0.0;
}

}  // namespace rewrap
