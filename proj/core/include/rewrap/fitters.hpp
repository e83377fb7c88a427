#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rewrap/corruption.hpp"
#include "rewrap/rewrap.hpp"
#include "rewrap/types.hpp"

namespace rewrap {

/// Named fitter with harness-level parameters. The corruption budget k, the
/// TORRENT keep fraction, and tau (when given relative to n) are resolved
/// against the dataset at run time.
struct FitterSpec {
    std::string id = "crr";  // see fitter_ids()
    /// tau = tau_rel * n unless tau_abs is set. Negative tau_rel means "use
    /// the attack-specific default table".
    double tau_rel = -1.0;
    std::optional<double> tau_abs;
    /// Corruption budget; defaults to the dataset's recorded support size.
    std::optional<int> k_override;
    /// TORRENT beta; defaults to the true corruption fraction.
    std::optional<double> beta_override;
    /// M-estimator scale; 0 = robust MAD estimate. Experiments pin 1.
    double sigma_hat = 1.0;
    double tol = 1e-4;
    int max_inner = 400;
    int max_outer = 100;
    SolveOptions solve;
};

/// All recognized fitter ids: ols, crr, trip, corals, torrent,
/// torrent_plus, tukey, tukey_plus, andrews, andrews_plus
/// ("<name>+" aliases accepted).
const std::vector<std::string>& fitter_ids();

/// Canonical id ("tukey+" -> "tukey_plus"); throws UnknownFitter.
std::string canonical_fitter_id(const std::string& id);

/// Default tau_rel for a REWRAP fitter under the given attack; 0 for
/// unprimed fitters.
double default_tau_rel(const std::string& canonical_id, AttackKind attack);

/// Resolved tau for this spec on an n-sample dataset.
double resolve_tau(const FitterSpec& spec, Eigen::Index n, AttackKind attack);

/// Runs the named fitter. Uses meta.corruption_support (when present) for
/// the default corruption budget and TORRENT beta.
FitReport run_fitter(const RegressionDataset& data, const FitterSpec& spec,
                     AttackKind attack = AttackKind::kOaa);

}  // namespace rewrap
