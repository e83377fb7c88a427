#include "rewrap/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <thread>

#include "rewrap/linalg.hpp"
#include "rewrap/rng.hpp"

namespace rewrap {

void ExperimentPlan::validate() const {
    if (repeats < 1) throw ParameterOutOfRange("plan: repeats must be >= 1");
    if (values.empty()) throw ParameterOutOfRange("plan: no axis values");
    if (fitters.empty()) throw ParameterOutOfRange("plan: no fitters");
    for (size_t i = 0; i < values.size(); ++i) {
        if (values[i] <= 0.0 && !(axis == Axis::kAlpha && values[i] == 0.0))
            throw ParameterOutOfRange("plan: axis values must be positive");
        if (i > 0 && values[i] <= values[i - 1])
            throw ParameterOutOfRange("plan: axis values must ascend");
    }
}

std::uint64_t derive_cell_seed(std::uint64_t master_seed, double axis_value,
                               const std::string& fitter_id, int repeat) {
    const std::uint64_t value_key =
        static_cast<std::uint64_t>(std::llround(axis_value * 1e6));
    const std::uint64_t base = Rng::derive(
        master_seed, {value_key, static_cast<std::uint64_t>(repeat)});
    return Rng::derive(base, fitter_id);
}

namespace {

const char* attack_name(AttackKind kind) {
    return kind == AttackKind::kOaa ? "oaa" : "aaa";
}

std::string fmt(double v, const char* spec = "%.9g") {
    char buf[48];
    std::snprintf(buf, sizeof(buf), spec, v);
    return buf;
}

}  // namespace

ResultRow fit_row(const RegressionDataset& data, const FitterSpec& fitter,
                  AttackKind attack) {
    ResultRow row;
    row.fitter = canonical_fitter_id(fitter.id);
    row.n = static_cast<int>(data.n());
    row.d = static_cast<int>(data.d());
    row.alpha = data.meta.corruption_support
                    ? static_cast<double>(data.meta.corruption_support->size()) /
                          static_cast<double>(data.n())
                    : 0.0;
    row.attack = attack_name(attack);
    row.tau = resolve_tau(fitter, data.n(), attack);
    row.seed = data.meta.seed;

    const auto t0 = std::chrono::steady_clock::now();
    try {
        const FitReport rep = run_fitter(data, fitter, attack);
        row.l2_error = data.meta.w_true
                           ? l2_error(rep.w_hat, *data.meta.w_true)
                           : std::numeric_limits<double>::quiet_NaN();
        row.outer_iters = rep.outer_iters;
        row.inner_iters_total = rep.inner_iters_total;
        row.converged = rep.converged;
    } catch (const Error&) {
        row.l2_error = std::numeric_limits<double>::quiet_NaN();
        row.converged = false;
    }
    const auto t1 = std::chrono::steady_clock::now();
    row.wall_ms =
        std::chrono::duration<double, std::milli>(t1 - t0).count();
    return row;
}

std::vector<ResultRow> run_sweep(const ExperimentPlan& plan, int threads) {
    plan.validate();
    struct Cell {
        double value;
        size_t fitter;
        int repeat;
    };
    std::vector<Cell> cells;
    for (const double v : plan.values)
        for (size_t f = 0; f < plan.fitters.size(); ++f)
            for (int r = 0; r < plan.repeats; ++r)
                cells.push_back({v, f, r});

    std::vector<ResultRow> rows(cells.size());
    const auto run_cell = [&](size_t idx) {
        const Cell& cell = cells[idx];
        const FitterSpec& fitter = plan.fitters[cell.fitter];
        const std::string id = canonical_fitter_id(fitter.id);
        const std::uint64_t seed =
            derive_cell_seed(plan.master_seed, cell.value, id, cell.repeat);

        GenConfig gen{plan.n, plan.d, plan.sigma, seed};
        double alpha = plan.alpha;
        switch (plan.axis) {
            case ExperimentPlan::Axis::kN:
                gen.n = static_cast<int>(cell.value);
                break;
            case ExperimentPlan::Axis::kD:
                gen.d = static_cast<int>(cell.value);
                break;
            case ExperimentPlan::Axis::kAlpha:
                alpha = cell.value;
                break;
        }
        try {
            const AttackSpec attack{plan.attack, alpha,
                                    Rng::derive(seed, "attack")};
            const RegressionDataset data = generate_attacked(gen, attack);
            rows[idx] = fit_row(data, fitter, plan.attack);
        } catch (const Error&) {
            ResultRow& row = rows[idx];
            row.fitter = id;
            row.n = gen.n;
            row.d = gen.d;
            row.alpha = alpha;
            row.attack = attack_name(plan.attack);
            row.tau = resolve_tau(fitter, gen.n, plan.attack);
            row.seed = seed;
            row.l2_error = std::numeric_limits<double>::quiet_NaN();
        }
    };

    if (threads <= 1) {
        for (size_t i = 0; i < cells.size(); ++i) run_cell(i);
    } else {
        std::atomic<size_t> next{0};
        std::vector<std::thread> pool;
        const size_t nworkers =
            std::min(static_cast<size_t>(threads), cells.size());
        for (size_t t = 0; t < nworkers; ++t)
            pool.emplace_back([&] {
                for (size_t i = next.fetch_add(1); i < cells.size();
                     i = next.fetch_add(1))
                    run_cell(i);
            });
        for (auto& th : pool) th.join();
    }
    return rows;
}

std::string csv_header() {
    return "fitter,n,d,alpha,attack,tau,seed,l2_error,outer_iters,"
           "inner_iters_total,converged,wall_ms";
}

std::string to_csv_row(const ResultRow& row) {
    std::string out = row.fitter;
    out += ',' + std::to_string(row.n);
    out += ',' + std::to_string(row.d);
    out += ',' + fmt(row.alpha, "%.6g");
    out += ',' + row.attack;
    out += ',' + fmt(row.tau);
    out += ',' + std::to_string(row.seed);
    out += ',' + (std::isnan(row.l2_error) ? std::string("nan")
                                           : fmt(row.l2_error));
    out += ',' + std::to_string(row.outer_iters);
    out += ',' + std::to_string(row.inner_iters_total);
    out += ',' + std::string(row.converged ? "true" : "false");
    out += ',' + fmt(row.wall_ms, "%.3f");
    return out;
}

void write_csv(const std::vector<ResultRow>& rows, std::ostream& os) {
    os << csv_header() << "\n";
    for (const ResultRow& row : rows) os << to_csv_row(row) << "\n";
}

RegressionDataset subset_dataset(const RegressionDataset& data,
                                 const std::vector<int>& indices) {
    RegressionDataset out;
    out.X.resize(data.d(), static_cast<Eigen::Index>(indices.size()));
    out.y.resize(static_cast<Eigen::Index>(indices.size()));
    for (size_t j = 0; j < indices.size(); ++j) {
        out.X.col(static_cast<Eigen::Index>(j)) = data.X.col(indices[j]);
        out.y[static_cast<Eigen::Index>(j)] = data.y[indices[j]];
    }
    out.meta.sigma = data.meta.sigma;
    out.meta.seed = data.meta.seed;
    out.meta.w_true = data.meta.w_true;
    if (data.meta.corruption_support) {
        std::vector<int> support;
        for (size_t j = 0; j < indices.size(); ++j) {
            if (std::binary_search(data.meta.corruption_support->begin(),
                                   data.meta.corruption_support->end(),
                                   indices[j]))
                support.push_back(static_cast<int>(j));
        }
        out.meta.corruption_support = std::move(support);
    }
    return out;
}

double select_tau_cv(const RegressionDataset& data, const FitterSpec& fitter,
                     int folds, const std::vector<double>& tau_rel_grid,
                     AttackKind attack, double trim_fraction) {
    data.validate();
    if (folds != 5 && folds != 10)
        throw ParameterOutOfRange("cv: folds must be 5 or 10");
    if (tau_rel_grid.empty()) throw ParameterOutOfRange("cv: empty tau grid");
    if (trim_fraction <= 0.0 || trim_fraction > 1.0)
        throw ParameterOutOfRange("cv: trim fraction must be in (0, 1]");
    const int n = static_cast<int>(data.n());
    if (folds > n) throw ParameterOutOfRange("cv: more folds than samples");

    // Contiguous folds; the remainder is spread over the first folds.
    std::vector<std::vector<int>> fold_idx(folds);
    const int base = n / folds;
    const int extra = n % folds;
    int pos = 0;
    for (int f = 0; f < folds; ++f) {
        const int size = base + (f < extra ? 1 : 0);
        for (int i = 0; i < size; ++i) fold_idx[f].push_back(pos++);
    }

    double best_tau = tau_rel_grid.front();
    double best_score = std::numeric_limits<double>::infinity();
    for (const double tau_rel : tau_rel_grid) {
        double score_sum = 0.0;
        bool failed = false;
        for (int f = 0; f < folds && !failed; ++f) {
            std::vector<int> train;
            train.reserve(n - fold_idx[f].size());
            for (int g = 0; g < folds; ++g)
                if (g != f)
                    train.insert(train.end(), fold_idx[g].begin(),
                                 fold_idx[g].end());
            const RegressionDataset sub = subset_dataset(data, train);
            FitterSpec spec = fitter;
            spec.tau_abs = tau_rel * static_cast<double>(sub.n());
            try {
                const FitReport rep = run_fitter(sub, spec, attack);
                // trimmed validation score, robust to outliers in the fold
                std::vector<double> sq;
                sq.reserve(fold_idx[f].size());
                for (const int i : fold_idx[f]) {
                    const double r =
                        data.y[i] - data.X.col(i).dot(rep.w_hat);
                    sq.push_back(r * r);
                }
                const size_t keep = std::max<size_t>(
                    1, static_cast<size_t>(
                           std::floor(trim_fraction *
                                      static_cast<double>(sq.size()))));
                std::nth_element(sq.begin(), sq.begin() + (keep - 1), sq.end());
                double s = 0.0;
                for (size_t i = 0; i < keep; ++i) s += sq[i];
                score_sum += s / static_cast<double>(keep);
            } catch (const Error&) {
                failed = true;  // this tau candidate only
            }
        }
        if (failed) continue;
        const double score = score_sum / folds;
        if (score < best_score) {
            best_score = score;
            best_tau = tau_rel;
        }
    }
    return best_tau;
}

}  // namespace rewrap
