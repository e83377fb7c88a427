#pragma once

#include <optional>

#include "rewrap/estimators.hpp"
#include "rewrap/types.hpp"

namespace rewrap {

enum class RewrapBase { kTrip, kTorrent, kTukey, kAndrews };

struct RewrapConfig {
    RewrapBase base = RewrapBase::kTrip;
    /// Prior weight; the penalty is M = tau * I throughout the outer loop.
    double tau = 0.0;
    double outer_tol = 1e-4;
    int max_outer = 100;
    InnerConfig inner;
    /// Loss for the M-estimator bases; ignored by trip/torrent.
    RhoSpec rho = RhoSpec::tukey();
    /// Keep the corruption estimate of every outer iteration (trip base
    /// only) in FitReport::iterates, for the momentum diagnostic.
    bool record_outer_corruptions = false;
};

/// The normal-prior update: prior mean becomes the posterior MAP, the
/// covariance (here, the penalty weight tau) stays constant.
PriorSpec simple_normal_update(const ModelCoef& posterior_map, double tau);

/// Outer loop: start from OLS, re-run the base fitter with the prior mean
/// set to the previous estimate, stop when the estimate stabilizes.
FitReport rewrap_fit(const RegressionDataset& data, const RewrapConfig& cfg);

/// rewrap_fit with base = trip (the CORALS composition).
FitReport corals_fit(const RegressionDataset& data, double tau,
                     const InnerConfig& inner, double outer_tol = 1e-4,
                     int max_outer = 100);

FitReport torrent_plus_fit(const RegressionDataset& data, double tau,
                           const InnerConfig& inner, double outer_tol = 1e-4,
                           int max_outer = 100);

FitReport tukey_plus_fit(const RegressionDataset& data, double tau,
                         const InnerConfig& inner,
                         const RhoSpec& rho = RhoSpec::tukey(),
                         double outer_tol = 1e-4, int max_outer = 100);

FitReport andrews_plus_fit(const RegressionDataset& data, double tau,
                           const InnerConfig& inner,
                           const RhoSpec& rho = RhoSpec::andrews(),
                           double outer_tol = 1e-4, int max_outer = 100);

}  // namespace rewrap
