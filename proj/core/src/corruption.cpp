#include "rewrap/corruption.hpp"

#include <cmath>

#include "rewrap/rng.hpp"
#include "rewrap/thresholding.hpp"

namespace rewrap {

RegressionDataset generate_clean(const GenConfig& cfg) {
    if (cfg.n < 1 || cfg.d < 1 || cfg.n < cfg.d)
        throw ParameterOutOfRange("generate: need n >= d >= 1");
    if (cfg.sigma < 0.0)
        throw ParameterOutOfRange("generate: sigma must be >= 0");

    Rng w_rng(Rng::derive(cfg.seed, "gen/w_true"));
    Rng x_rng(Rng::derive(cfg.seed, "gen/X"));
    Rng e_rng(Rng::derive(cfg.seed, "gen/noise"));

    RegressionDataset data;
    Vector w_true(cfg.d);
    for (int j = 0; j < cfg.d; ++j) w_true[j] = w_rng.normal();

    data.X.resize(cfg.d, cfg.n);
    for (int i = 0; i < cfg.n; ++i)
        for (int j = 0; j < cfg.d; ++j) data.X(j, i) = x_rng.normal();

    data.y = data.X.transpose() * w_true;
    for (int i = 0; i < cfg.n; ++i) data.y[i] += cfg.sigma * e_rng.normal();

    data.meta.sigma = cfg.sigma;
    data.meta.seed = cfg.seed;
    data.meta.w_true = std::move(w_true);
    return data;
}

RegressionDataset apply_oaa(const RegressionDataset& data,
                            const AttackSpec& attack) {
    if (attack.kind != AttackKind::kOaa)
        throw ParameterOutOfRange("oaa: attack kind mismatch");
    if (attack.alpha < 0.0 || attack.alpha >= 1.0)
        throw ParameterOutOfRange("oaa: alpha must be in [0, 1)");
    data.validate();
    const int n = static_cast<int>(data.n());
    const int k = round_half_up(attack.alpha * n);

    RegressionDataset out = data;
    if (k == 0) return out;

    Rng s_rng(Rng::derive(attack.seed, "oaa/support"));
    Rng u_rng(Rng::derive(attack.seed, "oaa/values"));
    const std::vector<int> support = sample_without_replacement(n, k, s_rng);
    for (const int i : support) out.y[i] = 20.0 + u_rng.uniform(0.0, 15.0);
    out.meta.corruption_support = support;
    return out;
}

RegressionDataset apply_aaa(const RegressionDataset& data,
                            const AttackSpec& attack) {
    if (attack.kind != AttackKind::kAaa)
        throw ParameterOutOfRange("aaa: attack kind mismatch");
    if (attack.alpha < 0.0 || attack.alpha >= 1.0)
        throw ParameterOutOfRange("aaa: alpha must be in [0, 1)");
    data.validate();
    const int n = static_cast<int>(data.n());
    const int k = round_half_up(attack.alpha * n);

    RegressionDataset out = data;
    if (k == 0) return out;

    const Vector norms = data.X.colwise().norm();
    const std::vector<int> support = top_k_support(norms, k);
    for (const int i : support) out.y[i] = 0.0;
    out.meta.corruption_support = support;
    return out;
}

double l2_error(const ModelCoef& w_hat, const ModelCoef& w_true) {
    if (w_hat.size() != w_true.size())
        throw DimensionMismatch("l2_error: dimension mismatch");
    return (w_hat - w_true).norm();
}

RegressionDataset generate_attacked(const GenConfig& cfg,
                                    const AttackSpec& attack) {
    RegressionDataset data = generate_clean(cfg);
    if (attack.alpha == 0.0) return data;
    return attack.kind == AttackKind::kOaa ? apply_oaa(data, attack)
                                           : apply_aaa(data, attack);
}

}  // namespace rewrap
