#pragma once

#include <cstdint>

#include "rewrap/types.hpp"

namespace rewrap {

struct GenConfig {
    int n = 2000;
    int d = 20;
    double sigma = 1.0;
    std::uint64_t seed = 0;
};

enum class AttackKind { kOaa, kAaa };

struct AttackSpec {
    AttackKind kind = AttackKind::kOaa;
    /// Corruption fraction; k* = round(alpha * n).
    double alpha = 0.0;
    /// RNG seed, consumed by OAA only (AAA is deterministic given X).
    std::uint64_t seed = 0;
};

/// Synthetic clean data: w* ~ N(0, I_d), columns x_i iid N(0, I_d),
/// y = X^T w* + eps with eps_i iid N(0, sigma^2). The generation and any
/// later attack draw from independent streams, so the clean data is a pure
/// function of cfg.seed.
RegressionDataset generate_clean(const GenConfig& cfg);

/// Oblivious attack: a uniformly random round(alpha * n)-subset gets
/// y_i <- 20 + u_i with u_i ~ U[0, 15]. X untouched; the support is
/// recorded in meta.corruption_support.
RegressionDataset apply_oaa(const RegressionDataset& data,
                            const AttackSpec& attack);

/// Adaptive leverage attack: the round(alpha * n) samples with the largest
/// ||x_i||_2 (ties by ascending index) get y_i <- 0. Deterministic.
RegressionDataset apply_aaa(const RegressionDataset& data,
                            const AttackSpec& attack);

/// ||w_hat - w_true||_2.
double l2_error(const ModelCoef& w_hat, const ModelCoef& w_true);

/// generate_clean followed by the requested attack (alpha = 0 or no attack
/// leaves the data clean).
RegressionDataset generate_attacked(const GenConfig& cfg,
                                    const AttackSpec& attack);

}  // namespace rewrap
