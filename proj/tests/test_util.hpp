#pragma once

#include "rewrap/corruption.hpp"
#include "rewrap/rng.hpp"
#include "rewrap/types.hpp"

namespace testutil {

// Small clean dataset seeded off a single integer.
inline rewrap::RegressionDataset make_clean(int n, int d, double sigma,
                                            std::uint64_t seed) {
    rewrap::GenConfig cfg;
    cfg.n = n;
    cfg.d = d;
    cfg.sigma = sigma;
    cfg.seed = seed;
    return rewrap::generate_clean(cfg);
}

inline rewrap::RegressionDataset make_attacked(int n, int d, double sigma,
                                               std::uint64_t seed,
                                               rewrap::AttackKind kind,
                                               double alpha) {
    rewrap::GenConfig cfg;
    cfg.n = n;
    cfg.d = d;
    cfg.sigma = sigma;
    cfg.seed = seed;
    const rewrap::AttackSpec attack{kind, alpha,
                                    rewrap::Rng::derive(seed, "attack")};
    return rewrap::generate_attacked(cfg, attack);
}

inline rewrap::Vector random_vector(Eigen::Index n, rewrap::Rng& rng,
                                    double scale = 1.0) {
    rewrap::Vector v(n);
    for (Eigen::Index i = 0; i < n; ++i) v[i] = scale * rng.normal();
    return v;
}

inline rewrap::Matrix random_matrix(Eigen::Index r, Eigen::Index c,
                                    rewrap::Rng& rng) {
    rewrap::Matrix m(r, c);
    for (Eigen::Index j = 0; j < c; ++j)
        for (Eigen::Index i = 0; i < r; ++i) m(i, j) = rng.normal();
    return m;
}

}  // namespace testutil
