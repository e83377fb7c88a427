#include "rewrap/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "rewrap/thresholding.hpp"

namespace rewrap {

double rho_eval(const RhoSpec& rho, double z) {
    const double c = rho.c;
    if (rho.kind == RhoSpec::Kind::kTukey) {
        if (std::abs(z) > c) return c * c / 6.0;
        const double t = 1.0 - (z * z) / (c * c);
        return c * c / 6.0 * (1.0 - t * t * t);
    }
    if (std::abs(z) > M_PI * c) return 2.0 * c * c;
    return c * c * (1.0 - std::cos(z / c));
}

double psi_eval(const RhoSpec& rho, double z) {
    const double c = rho.c;
    if (rho.kind == RhoSpec::Kind::kTukey) {
        if (std::abs(z) > c) return 0.0;
        const double t = 1.0 - (z * z) / (c * c);
        return z * t * t;
    }
    if (std::abs(z) > M_PI * c) return 0.0;
    return c * std::sin(z / c);
}

double weight_eval(const RhoSpec& rho, double z) {
    const double c = rho.c;
    if (rho.kind == RhoSpec::Kind::kTukey) {
        if (std::abs(z) > c) return 0.0;
        const double t = 1.0 - (z * z) / (c * c);
        return t * t;
    }
    if (std::abs(z) > M_PI * c) return 0.0;
    if (z == 0.0) return 1.0;
    return std::sin(z / c) / (z / c);
}

double mad_sigma(const Vector& r) {
    const auto median = [](std::vector<double> v) {
        const size_t m = v.size() / 2;
        std::nth_element(v.begin(), v.begin() + m, v.end());
        double hi = v[m];
        if (v.size() % 2 == 0) {
            std::nth_element(v.begin(), v.begin() + m - 1, v.begin() + m);
            return 0.5 * (hi + v[m - 1]);
        }
        return hi;
    };
    std::vector<double> vals(r.data(), r.data() + r.size());
    const double med = median(vals);
    for (double& v : vals) v = std::abs(v - med);
    return 1.4826 * median(std::move(vals));
}

FitReport trip_fit(const RegressionDataset& data, const PriorSpec& prior,
                   const InnerConfig& cfg) {
    data.validate();
    const Eigen::Index n = data.n();
    if (cfg.k < 0 || cfg.k > n)
        throw BudgetOutOfRange("trip: corruption budget k out of [0, n]");
    if (prior.dim() != data.d())
        throw DimensionMismatch("trip: prior dimension != d");

    const Matrix gram = data.X * data.X.transpose();
    const GramSolver penalized(gram + prior.matrix(), cfg.solve);

    // c0 = (I - P_MX) y - P_MM w0, assembled through one d-dim solve.
    const Vector h =
        penalized.solve(data.X * data.y + prior.apply(prior.mean()));
    const Vector c0 = data.y - data.X.transpose() * h;

    FitReport rep;
    Vector b = Vector::Zero(n);
    if (cfg.record_iterates) rep.iterates.push_back(b);
    int s = 0;
    bool converged = false;
    while (s < cfg.max_inner) {
        const Vector pb =
            data.X.transpose() * penalized.solve(data.X * b);
        Vector b_next = hard_threshold(pb + c0, cfg.k);
        const double change = (b_next - b).norm();
        b = std::move(b_next);
        ++s;
        rep.trace.push_back({change, std::nullopt});
        if (cfg.record_iterates) rep.iterates.push_back(b);
        if (change <= cfg.tol) {
            converged = true;
            break;
        }
    }

    // Final coefficient from the unpenalized Gram, per the update rule.
    const GramSolver plain(gram, cfg.solve);
    rep.w_hat = plain.solve(data.X * (data.y - b));
    rep.b_hat = SparseCorruption{std::move(b), cfg.k};
    rep.outer_iters = 1;
    rep.inner_iters_total = s;
    rep.converged = converged;
    return rep;
}

FitReport crr_fit(const RegressionDataset& data, const InnerConfig& cfg) {
    return trip_fit(data, PriorSpec::none(data.d()), cfg);
}

FitReport torrent_inner(const RegressionDataset& data,
                        const std::optional<PriorSpec>& prior,
                        const InnerConfig& cfg) {
    data.validate();
    const Eigen::Index n = data.n();
    const Eigen::Index d = data.d();
    if (cfg.keep_fraction <= 0.0 || cfg.keep_fraction > 1.0)
        throw ParameterOutOfRange("torrent: keep_fraction must be in (0, 1]");
    const int m = round_half_up(cfg.keep_fraction * static_cast<double>(n));
    if (m < 1)
        throw ParameterOutOfRange("torrent: keep_fraction leaves no samples");
    const PriorSpec p = prior ? *prior : PriorSpec::none(d);
    const Matrix M = p.matrix();
    const Vector mw0 = p.apply(p.mean());

    std::vector<int> active(n);
    std::iota(active.begin(), active.end(), 0);

    FitReport rep;
    Vector w = Vector::Zero(d);
    Vector w_prev;
    int s = 0;
    bool converged = false;
    while (s < cfg.max_inner) {
        Matrix Xs(d, static_cast<Eigen::Index>(active.size()));
        Vector ys(static_cast<Eigen::Index>(active.size()));
        for (size_t j = 0; j < active.size(); ++j) {
            Xs.col(static_cast<Eigen::Index>(j)) = data.X.col(active[j]);
            ys[static_cast<Eigen::Index>(j)] = data.y[active[j]];
        }
        const GramSolver solver(Xs * Xs.transpose() + M, cfg.solve);
        w = solver.solve(Xs * ys + mw0);
        ++s;
        const double change = s > 1
                                  ? (w - w_prev).norm()
                                  : std::numeric_limits<double>::infinity();
        rep.trace.push_back({change, std::nullopt});
        if (cfg.record_iterates) rep.iterates.push_back(w);
        w_prev = w;

        std::vector<int> next = ht_support(residuals(data, w), m);
        const bool stable = next == active;
        active = std::move(next);
        if (stable || change <= cfg.tol) {
            converged = true;
            break;
        }
    }
    rep.w_hat = std::move(w);
    rep.active_set = std::move(active);
    rep.outer_iters = 1;
    rep.inner_iters_total = s;
    rep.converged = converged;
    return rep;
}

FitReport mest_fit(const RegressionDataset& data, const RhoSpec& rho,
                   const std::optional<PriorSpec>& prior,
                   const InnerConfig& cfg) {
    data.validate();
    if (rho.c <= 0.0) throw ParameterOutOfRange("mest: rho.c must be > 0");
    if (rho.sigma_hat < 0.0)
        throw ParameterOutOfRange("mest: sigma_hat must be >= 0");
    const PriorSpec p = prior ? *prior : PriorSpec::none(data.d());
    const Vector mw0 = p.apply(p.mean());

    Vector w;
    double sh = rho.sigma_hat;
    if (!prior || sh == 0.0) {
        const ModelCoef ols = ols_fit(data, cfg.solve);
        if (sh == 0.0) sh = mad_sigma(residuals(data, ols));
        w = prior ? prior->mean() : ols;
    } else {
        w = prior->mean();
    }
    sh = std::max(sh, 1e-12);
    const double inv_s2 = 1.0 / (sh * sh);

    const auto objective = [&](const Vector& wv) {
        const Vector z = residuals(data, wv) / sh;
        double obj = 0.0;
        for (Eigen::Index i = 0; i < z.size(); ++i) obj += rho_eval(rho, z[i]);
        const Vector dw = wv - p.mean();
        return obj + 0.5 * dw.dot(p.apply(dw));
    };

    FitReport rep;
    if (cfg.record_iterates) rep.iterates.push_back(w);
    int s = 0;
    bool converged = false;
    Vector u(data.n());
    while (s < cfg.max_inner) {
        const Vector z = residuals(data, w) / sh;
        for (Eigen::Index i = 0; i < z.size(); ++i)
            u[i] = weight_eval(rho, z[i]);
        const Matrix A =
            (data.X * u.asDiagonal() * data.X.transpose()) * inv_s2 + p.matrix();
        const Vector rhs = (data.X * u.cwiseProduct(data.y)) * inv_s2 + mw0;
        Vector w_next = GramSolver(A, cfg.solve).solve(rhs);
        const double change = (w_next - w).norm();
        w = std::move(w_next);
        ++s;
        rep.trace.push_back({change, objective(w)});
        if (cfg.record_iterates) rep.iterates.push_back(w);
        if (change <= cfg.tol) {
            converged = true;
            break;
        }
    }
    rep.w_hat = std::move(w);
    rep.outer_iters = 1;
    rep.inner_iters_total = s;
    rep.converged = converged;
    return rep;
}

Vector f_corals_gradient(const RegressionDataset& data, const PriorSpec& prior,
                         const Vector& b, const ModelCoef& w_t,
                         const SolveOptions& opts) {
    data.validate();
    if (b.size() != data.n())
        throw DimensionMismatch("gradient: b length != n");
    if (w_t.size() != data.d())
        throw DimensionMismatch("gradient: w_t length != d");
    const GramSolver penalized(
        data.X * data.X.transpose() + prior.matrix(), opts);
    const Vector res = data.y - b;
    const Vector h = penalized.solve(data.X * res + prior.apply(w_t));
    return data.X.transpose() * h - res;
}

Vector f_crr_gradient(const RegressionDataset& data, const Vector& b,
                      const SolveOptions& opts) {
    return f_corals_gradient(data, PriorSpec::none(data.d()), b,
                             Vector::Zero(data.d()), opts);
}

MomentumDecomposition momentum_decomposition(const RegressionDataset& data,
                                             double tau, const Vector& b,
                                             const Vector& b_prev_hat,
                                             const SolveOptions& opts) {
    data.validate();
    if (tau < 0.0) throw ParameterOutOfRange("momentum: tau must be >= 0");
    if (b.size() != data.n() || b_prev_hat.size() != data.n())
        throw DimensionMismatch("momentum: corruption length != n");
    const double n = static_cast<double>(data.n());
    const GramSolver plain(data.X * data.X.transpose(), opts);
    const auto project = [&](const Vector& v) {
        return Vector(data.X.transpose() * plain.solve(data.X * v));
    };

    const ModelCoef w_t = plain.solve(data.X * (data.y - b_prev_hat));
    const Vector grad = f_corals_gradient(
        data, PriorSpec::isotropic(Vector::Zero(data.d()), tau), b, w_t, opts);

    const Vector res = data.y - b;
    MomentumDecomposition out;
    out.approx_grad = n / (n + tau) * project(res) - res +
                      tau / (n + tau) * project(data.y - b_prev_hat);
    out.C = grad - out.approx_grad;
    out.c_norm = out.C.norm();
    const double gnorm = grad.norm();
    out.rel_c = gnorm > 0.0 ? out.c_norm / gnorm : 0.0;
    return out;
}

}  // namespace rewrap
