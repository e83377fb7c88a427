#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "rewrap/breakdown.hpp"
#include "rewrap/fitters.hpp"

namespace rewrap {

struct ExperimentPlan {
    enum class Axis { kN, kD, kAlpha };

    Axis axis = Axis::kAlpha;
    std::vector<double> values;
    int n = 2000;
    int d = 20;
    double sigma = 1.0;
    double alpha = 0.3;
    AttackKind attack = AttackKind::kOaa;
    std::vector<FitterSpec> fitters;
    int repeats = 20;
    std::uint64_t master_seed = 0;

    void validate() const;
};

struct ResultRow {
    std::string fitter;
    int n = 0;
    int d = 0;
    double alpha = 0.0;
    std::string attack;
    double tau = 0.0;
    std::uint64_t seed = 0;
    double l2_error = 0.0;  // NaN marks a failed cell
    int outer_iters = 0;
    int inner_iters_total = 0;
    bool converged = false;
    double wall_ms = 0.0;
};

/// Per-cell seed: hash of (master_seed, axis value, fitter id, repeat).
std::uint64_t derive_cell_seed(std::uint64_t master_seed, double axis_value,
                               const std::string& fitter_id, int repeat);

/// Runs every (axis value, fitter, repeat) cell. Cells are independent and
/// may run on worker threads; rows come back in (value, fitter, repeat)
/// order regardless of completion order. Failed cells carry NaN error.
std::vector<ResultRow> run_sweep(const ExperimentPlan& plan, int threads = 1);

std::string csv_header();
std::string to_csv_row(const ResultRow& row);
void write_csv(const std::vector<ResultRow>& rows, std::ostream& os);

/// Runs one fitter on one dataset and fills a row (the `fit` subcommand).
ResultRow fit_row(const RegressionDataset& data, const FitterSpec& fitter,
                  AttackKind attack);

/// Columns-subset copy; meta.corruption_support is remapped to the new
/// positions, w_true carried over.
RegressionDataset subset_dataset(const RegressionDataset& data,
                                 const std::vector<int>& indices);

/// k-fold cross-validated prior weight. For each candidate tau' (relative
/// to n) the fitter runs on k-1 folds with tau = tau' * n_train and is
/// scored on the held-out fold by the mean of the smallest
/// trim_fraction * m squared residuals. Returns the tau' minimizing the
/// mean score; ties go to the smaller tau'.
double select_tau_cv(const RegressionDataset& data, const FitterSpec& fitter,
                     int folds, const std::vector<double>& tau_rel_grid,
                     AttackKind attack, double trim_fraction = 0.7);

}  // namespace rewrap
