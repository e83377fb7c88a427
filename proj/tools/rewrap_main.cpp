// rewrap: experiment driver for the robust-regression library.
//
// Subcommands: gen, fit, sweep, cv, breakdown, diagnose.
// Exit codes: 0 success, 2 usage error, 3 data error, 4 numerical failure.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "rewrap/breakdown.hpp"
#include "rewrap/corruption.hpp"
#include "rewrap/dataset_io.hpp"
#include "rewrap/estimators.hpp"
#include "rewrap/fitters.hpp"
#include "rewrap/linalg.hpp"
#include "rewrap/rewrap.hpp"
#include "rewrap/rng.hpp"
#include "rewrap/sweep.hpp"

namespace {

using nlohmann::json;

rewrap::AttackKind parse_attack(const std::string& s) {
    if (s == "oaa") return rewrap::AttackKind::kOaa;
    if (s == "aaa") return rewrap::AttackKind::kAaa;
    throw CLI::ValidationError("--attack must be oaa or aaa");
}

json row_to_json(const rewrap::ResultRow& row) {
    json j;
    j["fitter"] = row.fitter;
    j["n"] = row.n;
    j["d"] = row.d;
    j["alpha"] = row.alpha;
    j["attack"] = row.attack;
    j["tau"] = row.tau;
    j["seed"] = row.seed;
    if (std::isnan(row.l2_error))
        j["l2_error"] = nullptr;
    else
        j["l2_error"] = row.l2_error;
    j["outer_iters"] = row.outer_iters;
    j["inner_iters_total"] = row.inner_iters_total;
    j["converged"] = row.converged;
    j["wall_ms"] = row.wall_ms;
    return j;
}

struct FitterFlags {
    std::string id = "crr";
    double tau_rel = -1.0;
    double tau_abs = -1.0;
    int k = -1;
    double beta = -1.0;
    double sigma_hat = 1.0;
    double tol = 1e-4;
    int max_inner = 400;
    int max_outer = 100;

    rewrap::FitterSpec spec() const {
        rewrap::FitterSpec s;
        s.id = id;
        s.tau_rel = tau_rel;
        if (tau_abs >= 0.0) s.tau_abs = tau_abs;
        if (k >= 0) s.k_override = k;
        if (beta >= 0.0) s.beta_override = beta;
        s.sigma_hat = sigma_hat;
        s.tol = tol;
        s.max_inner = max_inner;
        s.max_outer = max_outer;
        return s;
    }
};

void add_fitter_flags(CLI::App* cmd, FitterFlags& f) {
    cmd->add_option("--tau-rel", f.tau_rel,
                    "Prior weight relative to n (tau = tau_rel * n)");
    cmd->add_option("--tau", f.tau_abs, "Absolute prior weight");
    cmd->add_option("--k", f.k,
                    "Corruption budget (default: dataset's recorded support)");
    cmd->add_option("--beta", f.beta,
                    "TORRENT rejection fraction (default: true fraction)");
    cmd->add_option("--sigma-hat", f.sigma_hat,
                    "M-estimator scale; 0 = MAD estimate");
    cmd->add_option("--tol", f.tol, "Convergence tolerance");
    cmd->add_option("--max-inner", f.max_inner, "Inner iteration cap");
    cmd->add_option("--max-outer", f.max_outer, "Outer iteration cap");
}

int run(int argc, char** argv) {
    CLI::App app{"rewrap: robust regression experiments"};
    app.require_subcommand(1);
    app.set_config("--config", "", "Config file with key = value lines");
    app.allow_config_extras(true);

    // ---- gen ----
    auto* gen = app.add_subcommand("gen", "Generate a dataset file");
    rewrap::GenConfig gen_cfg;
    std::string gen_attack = "none";
    double gen_alpha = 0.0;
    std::uint64_t gen_attack_seed = 0;
    std::string gen_out;
    gen->add_option("--n", gen_cfg.n, "Samples")->required();
    gen->add_option("--d", gen_cfg.d, "Dimensions")->required();
    gen->add_option("--sigma", gen_cfg.sigma, "Noise std");
    gen->add_option("--seed", gen_cfg.seed, "Generation seed");
    gen->add_option("--attack", gen_attack, "oaa, aaa or none");
    gen->add_option("--alpha", gen_alpha, "Corruption fraction");
    auto* gen_attack_seed_opt =
        gen->add_option("--attack-seed", gen_attack_seed,
                        "Attack seed (default: derived from --seed)");
    gen->add_option("--out", gen_out, "Output path")->required();

    // ---- fit ----
    auto* fit = app.add_subcommand("fit", "Fit one dataset, print JSON");
    std::string fit_path;
    FitterFlags fit_flags;
    std::string fit_attack = "oaa";
    fit->add_option("dataset", fit_path, "Dataset file")->required();
    fit->add_option("fitter", fit_flags.id, "Fitter id")->required();
    fit->add_option("--attack", fit_attack,
                    "Attack the dataset was subjected to (for tau defaults)");
    add_fitter_flags(fit, fit_flags);

    // ---- sweep ----
    auto* sweep = app.add_subcommand("sweep", "Run an experiment sweep to CSV");
    rewrap::ExperimentPlan plan;
    std::string sweep_axis = "alpha";
    std::vector<double> sweep_values;
    std::vector<std::string> sweep_fitters;
    std::string sweep_attack = "oaa";
    std::string sweep_out;
    int sweep_threads = 1;
    FitterFlags sweep_flags;
    sweep->add_option("--axis", sweep_axis, "n, d or alpha");
    sweep->add_option("--values", sweep_values, "Axis values (ascending)")
        ->required()
        ->delimiter(',');
    sweep->add_option("--fitters", sweep_fitters, "Fitter ids")
        ->required()
        ->delimiter(',');
    sweep->add_option("--n", plan.n, "Fixed n");
    sweep->add_option("--d", plan.d, "Fixed d");
    sweep->add_option("--sigma", plan.sigma, "Noise std");
    sweep->add_option("--alpha", plan.alpha, "Fixed corruption fraction");
    sweep->add_option("--attack", sweep_attack, "oaa or aaa");
    sweep->add_option("--repeats", plan.repeats, "Repeats per cell");
    sweep->add_option("--seed", plan.master_seed, "Master seed");
    sweep->add_option("--out", sweep_out, "CSV output path")->required();
    sweep->add_option("--threads", sweep_threads, "Worker threads");
    add_fitter_flags(sweep, sweep_flags);

    // ---- cv ----
    auto* cv = app.add_subcommand("cv", "Cross-validated tau selection");
    std::string cv_path;
    FitterFlags cv_flags;
    int cv_folds = 5;
    std::vector<double> cv_grid;
    double cv_trim = 0.7;
    std::string cv_attack = "oaa";
    cv->add_option("dataset", cv_path, "Dataset file")->required();
    cv->add_option("fitter", cv_flags.id, "Fitter id")->required();
    cv->add_option("--folds", cv_folds, "5 or 10");
    cv->add_option("--tau-grid-rel", cv_grid,
                   "Candidate tau values relative to n")
        ->required()
        ->delimiter(',');
    cv->add_option("--trim", cv_trim, "Validation score trim fraction");
    cv->add_option("--attack", cv_attack, "oaa or aaa");
    add_fitter_flags(cv, cv_flags);

    // ---- breakdown ----
    auto* bd = app.add_subcommand("breakdown",
                                  "Theoretical or empirical breakdown point");
    std::string bd_mode;
    rewrap::BreakdownGrid bd_grid;
    FitterFlags bd_flags;
    std::string bd_attack = "oaa";
    std::vector<double> bd_alpha_grid;
    double bd_threshold = 1.0;
    int bd_repeats = 20;
    int bd_threads = 1;
    rewrap::GenConfig bd_gen;
    bd->add_option("mode", bd_mode, "theory-corals, theory-crr or empirical")
        ->required();
    bd->add_option("--alpha-step", bd_grid.alpha_step, "Grid alpha step");
    bd->add_option("--tau-step", bd_grid.tau_step, "Grid tau' step");
    bd->add_option("--alpha-max", bd_grid.alpha_max, "Grid alpha ceiling");
    bd->add_option("--tau-max", bd_grid.tau_max, "Grid tau' ceiling");
    bd->add_option("--fitter", bd_flags.id, "Fitter id (empirical)");
    bd->add_option("--attack", bd_attack, "oaa or aaa (empirical)");
    bd->add_option("--alpha-grid", bd_alpha_grid,
                   "Ascending corruption fractions (empirical)")
        ->delimiter(',');
    bd->add_option("--threshold", bd_threshold,
                   "Mean-error breakdown threshold (empirical)");
    bd->add_option("--repeats", bd_repeats, "Seeded repeats per level");
    bd->add_option("--threads", bd_threads, "Worker threads");
    bd->add_option("--n", bd_gen.n, "Samples (empirical)");
    bd->add_option("--d", bd_gen.d, "Dimensions (empirical)");
    bd->add_option("--sigma", bd_gen.sigma, "Noise std (empirical)");
    bd->add_option("--seed", bd_gen.seed, "Master seed (empirical)");
    add_fitter_flags(bd, bd_flags);

    // ---- diagnose ----
    auto* diag = app.add_subcommand(
        "diagnose", "Momentum decomposition diagnostic for CORALS");
    std::string diag_path;
    double diag_tau = 0.0;
    int diag_steps = 20;
    bool diag_scaling = false;
    std::uint64_t diag_seed = 0;
    diag->add_option("dataset", diag_path, "Dataset file")->required();
    diag->add_option("--tau", diag_tau, "Prior weight")->required();
    diag->add_option("--steps", diag_steps, "Outer steps to capture");
    diag->add_flag("--scaling", diag_scaling,
                   "Also print the rel_c vs n scaling table");
    diag->add_option("--seed", diag_seed, "Seed for the scaling table");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);  // --help is a success, not a usage error
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    if (gen->parsed()) {
        rewrap::RegressionDataset data;
        if (gen_attack == "none" || gen_alpha == 0.0) {
            data = rewrap::generate_clean(gen_cfg);
        } else {
            const rewrap::AttackSpec attack{
                parse_attack(gen_attack), gen_alpha,
                gen_attack_seed_opt->count() > 0
                    ? gen_attack_seed
                    : rewrap::Rng::derive(gen_cfg.seed, "attack")};
            data = rewrap::generate_attacked(gen_cfg, attack);
        }
        rewrap::write_dataset(gen_out, data);
        const size_t corrupted = data.meta.corruption_support
                                     ? data.meta.corruption_support->size()
                                     : 0;
        std::cout << "wrote " << gen_out << " (n=" << data.n()
                  << ", d=" << data.d() << ", corrupted=" << corrupted
                  << ")\n";
        return 0;
    }

    if (fit->parsed()) {
        const rewrap::RegressionDataset data = rewrap::read_dataset(fit_path);
        const rewrap::ResultRow row =
            rewrap::fit_row(data, fit_flags.spec(), parse_attack(fit_attack));
        std::cout << row_to_json(row).dump() << "\n";
        return 0;
    }

    if (sweep->parsed()) {
        if (sweep_axis == "n")
            plan.axis = rewrap::ExperimentPlan::Axis::kN;
        else if (sweep_axis == "d")
            plan.axis = rewrap::ExperimentPlan::Axis::kD;
        else if (sweep_axis == "alpha")
            plan.axis = rewrap::ExperimentPlan::Axis::kAlpha;
        else
            throw CLI::ValidationError("--axis must be n, d or alpha");
        plan.values = sweep_values;
        plan.attack = parse_attack(sweep_attack);
        for (const std::string& id : sweep_fitters) {
            rewrap::FitterSpec s = sweep_flags.spec();
            s.id = id;
            plan.fitters.push_back(std::move(s));
        }
        const std::vector<rewrap::ResultRow> rows =
            rewrap::run_sweep(plan, sweep_threads);
        std::ofstream os(sweep_out);
        if (!os) throw rewrap::IoError("cannot open " + sweep_out);
        rewrap::write_csv(rows, os);
        std::cout << "wrote " << rows.size() << " rows to " << sweep_out
                  << "\n";
        return 0;
    }

    if (cv->parsed()) {
        const rewrap::RegressionDataset data = rewrap::read_dataset(cv_path);
        const double tau_rel = rewrap::select_tau_cv(
            data, cv_flags.spec(), cv_folds, cv_grid, parse_attack(cv_attack),
            cv_trim);
        json j;
        j["tau_rel"] = tau_rel;
        j["tau"] = tau_rel * static_cast<double>(data.n());
        std::cout << j.dump() << "\n";
        return 0;
    }

    if (bd->parsed()) {
        if (bd_mode == "theory-corals" || bd_mode == "theory-crr") {
            const rewrap::BreakdownResult res =
                bd_mode == "theory-corals"
                    ? rewrap::corals_breakdown_search(bd_grid)
                    : rewrap::crr_breakdown_search(bd_grid);
            json j;
            j["alpha_star"] = res.alpha_star;
            if (res.tau_star) j["tau_star"] = *res.tau_star;
            j["c1"] = res.c1;
            j["c2"] = res.c2;
            if (res.branch) j["branch"] = res.branch;
            std::cout << j.dump() << "\n";
            std::cout << "alpha* = " << res.alpha_star * 100.0 << "%";
            if (res.tau_star)
                std::cout << " at tau = " << *res.tau_star << " * n";
            std::cout << " (constraints: " << res.c1 << ", " << res.c2
                      << ")\n";
            return 0;
        }
        if (bd_mode == "empirical") {
            if (bd_alpha_grid.empty())
                throw CLI::ValidationError("empirical mode needs --alpha-grid");
            const double alpha = rewrap::empirical_breakdown(
                bd_flags.spec(), bd_gen, parse_attack(bd_attack),
                bd_alpha_grid, bd_threshold, bd_repeats, bd_threads);
            json j;
            j["fitter"] = rewrap::canonical_fitter_id(bd_flags.id);
            j["alpha_hat"] = alpha;
            j["threshold"] = bd_threshold;
            std::cout << j.dump() << "\n";
            std::cout << "empirical breakdown: tolerates alpha <= "
                      << alpha * 100.0 << "%\n";
            return 0;
        }
        throw CLI::ValidationError(
            "mode must be theory-corals, theory-crr or empirical");
    }

    if (diag->parsed()) {
        const rewrap::RegressionDataset data = rewrap::read_dataset(diag_path);
        rewrap::InnerConfig inner;
        inner.k = data.meta.corruption_support
                      ? static_cast<int>(data.meta.corruption_support->size())
                      : 0;
        rewrap::RewrapConfig cfg;
        cfg.base = rewrap::RewrapBase::kTrip;
        cfg.tau = diag_tau;
        cfg.max_outer = diag_steps;
        cfg.inner = inner;
        cfg.record_outer_corruptions = true;
        const rewrap::FitReport rep = rewrap::rewrap_fit(data, cfg);

        const double n = static_cast<double>(data.n());
        std::cout << "A+B=I check: n/(n+tau) + tau/(n+tau) = "
                  << n / (n + diag_tau) + diag_tau / (n + diag_tau) << "\n";
        std::cout << "step  c_norm        rel_c\n";
        rewrap::Vector b_prev = rewrap::Vector::Zero(data.n());
        for (size_t t = 0; t < rep.iterates.size(); ++t) {
            const auto dec = rewrap::momentum_decomposition(
                data, diag_tau, rep.iterates[t], b_prev);
            std::cout << t << "  " << dec.c_norm << "  " << dec.rel_c << "\n";
            b_prev = rep.iterates[t];
        }

        if (diag_scaling) {
            std::cout << "\nrel_c scaling (d=10, alpha=0.2 OAA, 20 seeds, "
                         "median over seeds):\n";
            std::cout << "n      median_rel_c\n";
            for (const int nval : {500, 2000, 8000}) {
                std::vector<double> rels;
                for (int s = 0; s < 20; ++s) {
                    const std::uint64_t seed = rewrap::Rng::derive(
                        diag_seed, {static_cast<std::uint64_t>(nval),
                                    static_cast<std::uint64_t>(s)});
                    const rewrap::GenConfig g{nval, 10, 1.0, seed};
                    const rewrap::AttackSpec a{
                        rewrap::AttackKind::kOaa, 0.2,
                        rewrap::Rng::derive(seed, "attack")};
                    const auto ds = rewrap::generate_attacked(g, a);
                    const int k = static_cast<int>(
                        ds.meta.corruption_support->size());
                    rewrap::InnerConfig ic;
                    ic.k = k;
                    const auto first =
                        rewrap::trip_fit(ds,
                                         rewrap::simple_normal_update(
                                             rewrap::ols_fit(ds), diag_tau),
                                         ic);
                    const auto dec = rewrap::momentum_decomposition(
                        ds, diag_tau, first.b_hat->b,
                        rewrap::Vector::Zero(ds.n()));
                    rels.push_back(dec.rel_c);
                }
                std::sort(rels.begin(), rels.end());
                std::cout << nval << "  " << rels[rels.size() / 2] << "\n";
            }
        }
        return 0;
    }

    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const CLI::Error& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const rewrap::IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const rewrap::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const rewrap::UnknownFitter& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const rewrap::DimensionMismatch& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const rewrap::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    }
}
