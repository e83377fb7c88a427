#include "rewrap/rewrap.hpp"

#include "rewrap/linalg.hpp"

namespace rewrap {

PriorSpec simple_normal_update(const ModelCoef& posterior_map, double tau) {
    return PriorSpec::isotropic(posterior_map, tau);
}

FitReport rewrap_fit(const RegressionDataset& data, const RewrapConfig& cfg) {
    data.validate();
    if (cfg.tau < 0.0) throw ParameterOutOfRange("rewrap: tau must be >= 0");
    if (cfg.max_outer < 1)
        throw ParameterOutOfRange("rewrap: max_outer must be >= 1");

    const auto run_base = [&](const PriorSpec& prior) -> FitReport {
        switch (cfg.base) {
            case RewrapBase::kTrip:
                return trip_fit(data, prior, cfg.inner);
            case RewrapBase::kTorrent:
                return torrent_inner(data, prior, cfg.inner);
            case RewrapBase::kTukey:
            case RewrapBase::kAndrews:
                return mest_fit(data, cfg.rho, prior, cfg.inner);
        }
        throw ParameterOutOfRange("rewrap: unknown base");
    };

    FitReport outer;
    ModelCoef w = ols_fit(data, cfg.inner.solve);
    FitReport last;
    int t = 0;
    bool converged = false;
    while (t < cfg.max_outer) {
        last = run_base(simple_normal_update(w, cfg.tau));
        ++t;
        const double change = (last.w_hat - w).norm();
        w = last.w_hat;
        outer.trace.push_back({change, std::nullopt});
        outer.inner_iters_total += last.inner_iters_total;
        if (cfg.record_outer_corruptions && last.b_hat)
            outer.iterates.push_back(last.b_hat->b);
        if (change <= cfg.outer_tol) {
            converged = true;
            break;
        }
    }
    outer.w_hat = std::move(w);
    outer.b_hat = std::move(last.b_hat);
    outer.active_set = std::move(last.active_set);
    outer.outer_iters = t;
    outer.converged = converged;
    return outer;
}

FitReport corals_fit(const RegressionDataset& data, double tau,
                     const InnerConfig& inner, double outer_tol,
                     int max_outer) {
    RewrapConfig cfg;
    cfg.base = RewrapBase::kTrip;
    cfg.tau = tau;
    cfg.inner = inner;
    cfg.outer_tol = outer_tol;
    cfg.max_outer = max_outer;
    return rewrap_fit(data, cfg);
}

FitReport torrent_plus_fit(const RegressionDataset& data, double tau,
                           const InnerConfig& inner, double outer_tol,
                           int max_outer) {
    RewrapConfig cfg;
    cfg.base = RewrapBase::kTorrent;
    cfg.tau = tau;
    cfg.inner = inner;
    cfg.outer_tol = outer_tol;
    cfg.max_outer = max_outer;
    return rewrap_fit(data, cfg);
}

FitReport tukey_plus_fit(const RegressionDataset& data, double tau,
                         const InnerConfig& inner, const RhoSpec& rho,
                         double outer_tol, int max_outer) {
    RewrapConfig cfg;
    cfg.base = RewrapBase::kTukey;
    cfg.tau = tau;
    cfg.inner = inner;
    cfg.rho = rho;
    cfg.outer_tol = outer_tol;
    cfg.max_outer = max_outer;
    return rewrap_fit(data, cfg);
}

FitReport andrews_plus_fit(const RegressionDataset& data, double tau,
                           const InnerConfig& inner, const RhoSpec& rho,
                           double outer_tol, int max_outer) {
    RewrapConfig cfg;
    cfg.base = RewrapBase::kAndrews;
    cfg.tau = tau;
    cfg.inner = inner;
    cfg.rho = rho;
    cfg.outer_tol = outer_tol;
    cfg.max_outer = max_outer;
    return rewrap_fit(data, cfg);
}

}  // namespace rewrap
