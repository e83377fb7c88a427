#include "rewrap/breakdown.hpp"

#include <atomic>
#include <cmath>
#include <limits>
#include <numbers>
#include <thread>

#include "rewrap/rng.hpp"

namespace rewrap {

SscSssConstants ssc_sss_bruteforce(const Matrix& X, int m) {
    const int n = static_cast<int>(X.cols());
    if (n > 20) throw TooLarge("ssc_sss: n > 20 exceeds enumeration guard");
    if (m < 1 || m > n) throw ParameterOutOfRange("ssc_sss: m out of [1, n]");

    SscSssConstants out;
    out.m = m;
    out.exact = true;
    out.lambda_m = std::numeric_limits<double>::infinity();
    out.Lambda_m = -std::numeric_limits<double>::infinity();

    std::vector<int> comb(m);
    for (int i = 0; i < m; ++i) comb[i] = i;
    Matrix Xs(X.rows(), m);
    while (true) {
        for (int i = 0; i < m; ++i) Xs.col(i) = X.col(comb[i]);
        Eigen::SelfAdjointEigenSolver<Matrix> es(Xs * Xs.transpose(),
                                                 Eigen::EigenvaluesOnly);
        out.lambda_m = std::min(out.lambda_m, es.eigenvalues().minCoeff());
        out.Lambda_m = std::max(out.Lambda_m, es.eigenvalues().maxCoeff());

        // next lexicographic combination
        int i = m - 1;
        while (i >= 0 && comb[i] == n - m + i) --i;
        if (i < 0) break;
        ++comb[i];
        for (int j = i + 1; j < m; ++j) comb[j] = comb[j - 1] + 1;
    }
    return out;
}

std::pair<double, double> gaussian_gram_bounds(double n, double d,
                                               double delta, double eps) {
    if (eps <= 0.0 || eps >= 0.5)
        throw ParameterOutOfRange("gram bounds: eps must be in (0, 1/2)");
    if (delta <= 0.0 || delta >= 1.0)
        throw ParameterOutOfRange("gram bounds: delta must be in (0, 1)");
    const double e2 = std::numbers::e * std::numbers::e;
    const double c = 24.0 * e2 * std::log(3.0 / eps);
    const double cp = 24.0 * e2;
    const double dev =
        std::sqrt(c * n * d + cp * n * std::log(2.0 / delta)) / (1.0 - 2.0 * eps);
    return {n + dev, n - dev};
}

std::pair<double, double> ssc_sss_leading_terms(double n, double k) {
    if (k <= 0.0 || k > n)
        throw ParameterOutOfRange("leading terms: need 0 < k <= n");
    const double e = std::numbers::e;
    const double upper = k * (1.0 + 3.0 * e * std::sqrt(6.0 * std::log(e * n / k)));
    double lower = n;
    if (k < n) {
        const double r = n - k;
        lower = n - r * (1.0 + 3.0 * e * std::sqrt(6.0 * std::log(e * n / r)));
    }
    return {upper, lower};
}

std::pair<double, double> subgaussian_gram_bounds(double n, double d,
                                                  double lambda_max_sigma,
                                                  double lambda_min_sigma,
                                                  double C_K, double c_K,
                                                  double delta) {
    if (n <= 0.0 || d <= 0.0 || c_K <= 0.0 || C_K < 0.0)
        throw ParameterOutOfRange("subgaussian bounds: nonpositive constant");
    if (delta <= 0.0 || delta >= 1.0)
        throw ParameterOutOfRange("subgaussian bounds: delta must be in (0, 1)");
    const double t = std::sqrt(std::log(2.0 / delta) / c_K);
    const double dev = C_K * std::sqrt(d * n) + t * std::sqrt(n);
    return {lambda_max_sigma * n + dev, lambda_min_sigma * n - dev};
}

double subset_bound_factor(double a) {
    if (a <= 0.0 || a >= std::numbers::e)
        throw ParameterOutOfRange("subset bound factor: need 0 < a < e");
    return 1.0 + 3.0 * std::numbers::e *
                     std::sqrt(6.0 * std::log(std::numbers::e / a));
}

namespace {

double constraint_c1(double alpha, double tau_prime) {
    return 4.0 * alpha * subset_bound_factor(2.0 * alpha) / (1.0 + tau_prime);
}

double constraint_c2(double alpha, double tau_prime) {
    const double s = std::sqrt(2.0 * alpha * subset_bound_factor(2.0 * alpha)) +
                     std::sqrt(alpha * subset_bound_factor(alpha));
    return 2.0 * tau_prime / (1.0 + tau_prime) * s;
}

}  // namespace

BreakdownResult corals_breakdown_search(const BreakdownGrid& grid) {
    if (grid.alpha_step <= 0.0 || grid.tau_step <= 0.0)
        throw ParameterOutOfRange("breakdown search: step sizes must be > 0");
    const long na = std::lround(grid.alpha_max / grid.alpha_step);
    const long nt = std::lround(grid.tau_max / grid.tau_step);
    for (long ia = na; ia >= 1; --ia) {
        const double alpha = static_cast<double>(ia) * grid.alpha_step;
        for (long it = 0; it <= nt; ++it) {
            const double tau = static_cast<double>(it) * grid.tau_step;
            const double c2 = constraint_c2(alpha, tau);
            if (c2 >= 1.0) break;  // c2 is increasing in tau'
            const double c1 = constraint_c1(alpha, tau);
            if (c1 < 1.0) {
                BreakdownResult out;
                out.alpha_star = alpha;
                out.tau_star = tau;
                out.c1 = c1;
                out.c2 = c2;
                out.grid = grid;
                return out;
            }
        }
    }
    throw EmptyFeasible("corals breakdown: no feasible grid point");
}

BreakdownResult crr_breakdown_search(const BreakdownGrid& grid) {
    if (grid.alpha_step <= 0.0)
        throw ParameterOutOfRange("breakdown search: step sizes must be > 0");
    const long na = std::lround(grid.alpha_max / grid.alpha_step);
    for (long ia = na; ia >= 1; --ia) {
        const double alpha = static_cast<double>(ia) * grid.alpha_step;
        const double c1 = constraint_c1(alpha, 0.0);
        // tau -> infinity limit of the overall condition: 2 tau/(1+tau) -> 2.
        const double c2 = 2.0 * (std::sqrt(2.0 * alpha *
                                           subset_bound_factor(2.0 * alpha)) +
                                 std::sqrt(alpha * subset_bound_factor(alpha)));
        if (c1 < 1.0 || c2 < 1.0) {
            BreakdownResult out;
            out.alpha_star = alpha;
            out.c1 = c1;
            out.c2 = c2;
            out.branch = c1 < 1.0 ? 1 : 2;
            out.grid = grid;
            return out;
        }
    }
    throw EmptyFeasible("crr breakdown: no feasible grid point");
}

double mean_l2_error(const FitterSpec& fitter, const GenConfig& gen,
                     AttackKind attack, double alpha, int repeats,
                     int threads) {
    if (repeats < 1) throw ParameterOutOfRange("breakdown: repeats >= 1");
    const std::uint64_t alpha_key =
        static_cast<std::uint64_t>(std::llround(alpha * 1e6));
    std::vector<double> errors(repeats,
                               std::numeric_limits<double>::infinity());

    const auto run_cell = [&](int r) {
        const std::uint64_t seed =
            Rng::derive(gen.seed, {alpha_key, static_cast<std::uint64_t>(r)});
        GenConfig cell = gen;
        cell.seed = seed;
        AttackSpec spec{attack, alpha, Rng::derive(seed, "attack")};
        try {
            const RegressionDataset data = generate_attacked(cell, spec);
            const FitReport rep = run_fitter(data, fitter, attack);
            errors[r] = l2_error(rep.w_hat, *data.meta.w_true);
        } catch (const Error&) {
            // counted as a failure at this corruption level
        }
    };

    if (threads <= 1) {
        for (int r = 0; r < repeats; ++r) run_cell(r);
    } else {
        std::atomic<int> next{0};
        std::vector<std::thread> pool;
        const int nworkers = std::min(threads, repeats);
        pool.reserve(nworkers);
        for (int t = 0; t < nworkers; ++t)
            pool.emplace_back([&] {
                for (int r = next.fetch_add(1); r < repeats;
                     r = next.fetch_add(1))
                    run_cell(r);
            });
        for (auto& th : pool) th.join();
    }

    double sum = 0.0;
    for (const double e : errors) sum += e;
    return sum / static_cast<double>(repeats);
}

double empirical_breakdown(const FitterSpec& fitter, const GenConfig& gen,
                           AttackKind attack,
                           const std::vector<double>& alpha_grid,
                           double error_threshold, int repeats, int threads) {
    if (alpha_grid.empty())
        throw ParameterOutOfRange("breakdown: empty alpha grid");
    for (size_t i = 1; i < alpha_grid.size(); ++i)
        if (alpha_grid[i] <= alpha_grid[i - 1])
            throw ParameterOutOfRange("breakdown: alpha grid must ascend");

    double tolerated = 0.0;
    for (const double alpha : alpha_grid) {
        const double mean =
            mean_l2_error(fitter, gen, attack, alpha, repeats, threads);
        if (!(mean <= error_threshold)) break;
        tolerated = alpha;
    }
    return tolerated;
}

}  // namespace rewrap
