#include "rewrap/fitters.hpp"

#include <algorithm>

#include "rewrap/linalg.hpp"

namespace rewrap {

const std::vector<std::string>& fitter_ids() {
    static const std::vector<std::string> ids = {
        "ols",     "crr",          "trip",  "corals",
        "torrent", "torrent_plus", "tukey", "tukey_plus",
        "andrews", "andrews_plus"};
    return ids;
}

std::string canonical_fitter_id(const std::string& id) {
    std::string s = id;
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    if (!s.empty() && s.back() == '+') s = s.substr(0, s.size() - 1) + "_plus";
    const auto& ids = fitter_ids();
    if (std::find(ids.begin(), ids.end(), s) == ids.end())
        throw UnknownFitter("unknown fitter id: " + id);
    return s;
}

double default_tau_rel(const std::string& canonical_id, AttackKind attack) {
    const bool oaa = attack == AttackKind::kOaa;
    if (canonical_id == "corals") return 0.049;
    if (canonical_id == "torrent_plus") return oaa ? 0.01 : 0.0001;
    if (canonical_id == "tukey_plus") return oaa ? 0.002 : 0.0025;
    if (canonical_id == "andrews_plus") return oaa ? 0.0035 : 0.0008;
    if (canonical_id == "trip") return 0.049;
    return 0.0;
}

double resolve_tau(const FitterSpec& spec, Eigen::Index n, AttackKind attack) {
    if (spec.tau_abs) return *spec.tau_abs;
    const double rel = spec.tau_rel >= 0.0
                           ? spec.tau_rel
                           : default_tau_rel(canonical_fitter_id(spec.id), attack);
    return rel * static_cast<double>(n);
}

FitReport run_fitter(const RegressionDataset& data, const FitterSpec& spec,
                     AttackKind attack) {
    data.validate();
    const std::string id = canonical_fitter_id(spec.id);
    const Eigen::Index n = data.n();

    int k_star = 0;
    if (spec.k_override)
        k_star = *spec.k_override;
    else if (data.meta.corruption_support)
        k_star = static_cast<int>(data.meta.corruption_support->size());
    const double alpha = static_cast<double>(k_star) / static_cast<double>(n);
    const double beta = spec.beta_override ? *spec.beta_override : alpha;
    const double tau = resolve_tau(spec, n, attack);

    InnerConfig inner;
    inner.tol = spec.tol;
    inner.max_inner = spec.max_inner;
    inner.k = k_star;
    inner.keep_fraction = 1.0 - beta;
    inner.solve = spec.solve;

    if (id == "ols") {
        FitReport rep;
        rep.w_hat = ols_fit(data, spec.solve);
        rep.outer_iters = 1;
        rep.inner_iters_total = 1;
        rep.converged = true;
        return rep;
    }
    if (id == "crr") return crr_fit(data, inner);
    if (id == "trip")
        return trip_fit(data,
                        PriorSpec::isotropic(Vector::Zero(data.d()), tau),
                        inner);
    if (id == "corals")
        return corals_fit(data, tau, inner, spec.tol, spec.max_outer);
    if (id == "torrent") return torrent_inner(data, std::nullopt, inner);
    if (id == "torrent_plus")
        return torrent_plus_fit(data, tau, inner, spec.tol, spec.max_outer);
    if (id == "tukey")
        return mest_fit(data, RhoSpec::tukey(4.6851, spec.sigma_hat),
                        std::nullopt, inner);
    if (id == "tukey_plus")
        return tukey_plus_fit(data, tau, inner,
                              RhoSpec::tukey(4.6851, spec.sigma_hat),
                              spec.tol, spec.max_outer);
    if (id == "andrews")
        return mest_fit(data, RhoSpec::andrews(1.338, spec.sigma_hat),
                        std::nullopt, inner);
    if (id == "andrews_plus")
        return andrews_plus_fit(data, tau, inner,
                                RhoSpec::andrews(1.338, spec.sigma_hat),
                                spec.tol, spec.max_outer);
    throw UnknownFitter("unknown fitter id: " + spec.id);
}

}  // namespace rewrap
