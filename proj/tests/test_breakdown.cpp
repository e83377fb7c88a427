#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <limits>

#include "rewrap/breakdown.hpp"
#include "rewrap/rng.hpp"
#include "test_util.hpp"

using namespace rewrap;

namespace {

// Independent subset enumerator (Gosper's hack over bitmasks) — iterates in
// a different order than the library's lexicographic enumeration.
SscSssConstants gosper_oracle(const Matrix& X, int m) {
    const int n = static_cast<int>(X.cols());
    SscSssConstants out;
    out.m = m;
    out.exact = true;
    out.lambda_m = std::numeric_limits<double>::infinity();
    out.Lambda_m = 0.0;
    unsigned mask = (1u << m) - 1u;
    const unsigned limit = 1u << n;
    while (mask < limit) {
        Matrix Xs(X.rows(), m);
        int c = 0;
        for (int i = 0; i < n; ++i)
            if (mask & (1u << i)) Xs.col(c++) = X.col(i);
        const Eigen::SelfAdjointEigenSolver<Matrix> es(Xs * Xs.transpose());
        out.lambda_m = std::min(out.lambda_m, es.eigenvalues().minCoeff());
        out.Lambda_m = std::max(out.Lambda_m, es.eigenvalues().maxCoeff());
        // Gosper: next bit permutation with the same popcount.
        const unsigned c0 = mask & -mask;
        const unsigned r = mask + c0;
        mask = (((r ^ mask) >> 2) / c0) | r;
    }
    return out;
}

double g_factor_oracle(double a) {
    return 1.0 + 3.0 * M_E * std::sqrt(6.0 * std::log(M_E / a));
}

}  // namespace

TEST_CASE("bruteforce: m = n and m = 1 closed forms") {
    Rng rng(1);
    const Matrix X = testutil::random_matrix(3, 7, rng);
    const Eigen::SelfAdjointEigenSolver<Matrix> es(X * X.transpose());

    const SscSssConstants full = ssc_sss_bruteforce(X, 7);
    CHECK(full.lambda_m == doctest::Approx(es.eigenvalues().minCoeff()));
    CHECK(full.Lambda_m == doctest::Approx(es.eigenvalues().maxCoeff()));

    const SscSssConstants one = ssc_sss_bruteforce(X, 1);
    double max_norm = 0.0, min_norm = std::numeric_limits<double>::infinity();
    for (int i = 0; i < 7; ++i) {
        max_norm = std::max(max_norm, X.col(i).squaredNorm());
        min_norm = std::min(min_norm, X.col(i).squaredNorm());
    }
    CHECK(one.Lambda_m == doctest::Approx(max_norm));
    // A single column's gram x x^T is rank one: lambda_min is 0 when d > 1.
    CHECK(one.lambda_m == doctest::Approx(0.0).epsilon(1e-10));
}

TEST_CASE("bruteforce: matches an independently ordered enumerator") {
    Rng rng(2);
    for (int rep = 0; rep < 10; ++rep) {
        const int n = 6 + static_cast<int>(rng.uniform(0.0, 6.0));
        const int d = 2 + static_cast<int>(rng.uniform(0.0, 3.0));
        const Matrix X = testutil::random_matrix(d, n, rng);
        for (const int m : {1, n / 2, n}) {
            const SscSssConstants a = ssc_sss_bruteforce(X, m);
            const SscSssConstants b = gosper_oracle(X, m);
            CHECK(a.lambda_m == doctest::Approx(b.lambda_m));
            CHECK(a.Lambda_m == doctest::Approx(b.Lambda_m));
        }
    }
}

TEST_CASE("bruteforce: monotonicity and subset containment, 50 instances") {
    Rng rng(3);
    for (int rep = 0; rep < 50; ++rep) {
        const int n = 4 + static_cast<int>(rng.uniform(0.0, 6.0));
        const int d = 2 + static_cast<int>(rng.uniform(0.0, 3.0));
        const Matrix X = testutil::random_matrix(d, n, rng);

        double prev_lambda = -1.0, prev_Lambda = -1.0;
        for (int m = 1; m <= n; ++m) {
            const SscSssConstants c = ssc_sss_bruteforce(X, m);
            // Both extremes grow (weakly) with the subset size.
            CHECK(c.lambda_m >= prev_lambda - 1e-9);
            CHECK(c.Lambda_m >= prev_Lambda - 1e-9);
            prev_lambda = c.lambda_m;
            prev_Lambda = c.Lambda_m;
        }

        // Per-subset containment for a handful of explicit subsets.
        const int m = std::max(1, n / 2);
        const SscSssConstants c = ssc_sss_bruteforce(X, m);
        for (int start = 0; start + m <= n; ++start) {
            Matrix Xs(d, m);
            for (int j = 0; j < m; ++j) Xs.col(j) = X.col(start + j);
            const Eigen::SelfAdjointEigenSolver<Matrix> es(Xs *
                                                           Xs.transpose());
            CHECK(c.lambda_m <= es.eigenvalues().minCoeff() + 1e-9);
            CHECK(c.Lambda_m >= es.eigenvalues().maxCoeff() - 1e-9);
        }
    }
}

TEST_CASE("bruteforce: size guard") {
    Rng rng(4);
    const Matrix X = testutil::random_matrix(2, 21, rng);
    CHECK_THROWS_AS(ssc_sss_bruteforce(X, 3), TooLarge);
}

TEST_CASE("gaussian bounds: independent transcription and scaling") {
    const double n = 1000.0, d = 10.0, delta = 0.1, eps = 0.1;
    const double c = 24.0 * M_E * M_E * std::log(3.0 / eps);
    const double cp = 24.0 * M_E * M_E;
    const double dev = std::sqrt(c * n * d + cp * n * std::log(2.0 / delta)) /
                       (1.0 - 2.0 * eps);
    const auto [upper, lower] = gaussian_gram_bounds(n, d, delta, eps);
    CHECK(upper == doctest::Approx(n + dev));
    CHECK(lower == doctest::Approx(n - dev));

    // The deviation term exactly doubles when n quadruples.
    const auto [u1, l1] = gaussian_gram_bounds(n, d, delta, eps);
    const auto [u4, l4] = gaussian_gram_bounds(4.0 * n, d, delta, eps);
    CHECK(u4 - 4.0 * n == doctest::Approx(2.0 * (u1 - n)));
    CHECK(4.0 * n - l4 == doctest::Approx(2.0 * (n - l1)));
}

TEST_CASE("subgaussian bounds: formula transcription") {
    const double n = 500.0, d = 8.0;
    const double lmax = 2.0, lmin = 0.5, CK = 1.7, cK = 0.3, delta = 0.05;
    const double t = std::sqrt(std::log(2.0 / delta) / cK);
    const auto [upper, lower] =
        subgaussian_gram_bounds(n, d, lmax, lmin, CK, cK, delta);
    CHECK(upper ==
          doctest::Approx(lmax * n + CK * std::sqrt(d * n) + t * std::sqrt(n)));
    CHECK(lower ==
          doctest::Approx(lmin * n - CK * std::sqrt(d * n) - t * std::sqrt(n)));
}

TEST_CASE("leading terms: k = n and scale-free ratio") {
    const auto [upper, lower] = ssc_sss_leading_terms(1000.0, 1000.0);
    CHECK(lower == doctest::Approx(1000.0));
    CHECK(upper == doctest::Approx(1000.0 * g_factor_oracle(1.0)));

    // Lambda_k / n depends only on alpha = k / n.
    const auto [u1, l1] = ssc_sss_leading_terms(1000.0, 10.0);
    const auto [u2, l2] = ssc_sss_leading_terms(5000.0, 50.0);
    CHECK(u1 / 1000.0 == doctest::Approx(u2 / 5000.0));
    CHECK(l1 / 1000.0 == doctest::Approx(l2 / 5000.0));
}

TEST_CASE("subset_bound_factor: oracle values and monotonicity") {
    for (const double a : {0.001, 0.01, 0.05, 0.1, 0.5, 1.0}) {
        CHECK(subset_bound_factor(a) == doctest::Approx(g_factor_oracle(a)));
    }
    CHECK(subset_bound_factor(0.01) > subset_bound_factor(0.02));
    CHECK_THROWS_AS(subset_bound_factor(0.0), ParameterOutOfRange);
    CHECK_THROWS_AS(subset_bound_factor(3.0), ParameterOutOfRange);
}

TEST_CASE("crr search: band, binding branch, refinement stability") {
    BreakdownGrid grid;
    const BreakdownResult res = crr_breakdown_search(grid);
    CHECK(res.alpha_star >= 0.004);
    CHECK(res.alpha_star <= 0.007);
    CHECK(res.branch == 1);
    CHECK(res.c1 < 1.0);

    BreakdownGrid fine = grid;
    fine.alpha_step = grid.alpha_step / 10.0;
    const BreakdownResult refined = crr_breakdown_search(fine);
    CHECK(refined.alpha_star >= res.alpha_star - 1e-12);
    CHECK(refined.alpha_star <= res.alpha_star + grid.alpha_step + 1e-12);
}

TEST_CASE("corals search: dominates the tau' = 0 slice") {
    BreakdownGrid grid;
    const BreakdownResult free = corals_breakdown_search(grid);
    CHECK(free.c1 < 1.0);
    CHECK(free.c2 < 1.0);
    REQUIRE(free.tau_star.has_value());
    CHECK(*free.tau_star > 0.0);

    BreakdownGrid slice = grid;
    slice.tau_max = 0.0;
    const BreakdownResult pinned = corals_breakdown_search(slice);
    CHECK(free.alpha_star > pinned.alpha_star);

    // tau' = 0 slice equals the first branch of the CRR search.
    const BreakdownResult crr = crr_breakdown_search(grid);
    CHECK(pinned.alpha_star == doctest::Approx(crr.alpha_star));

    BreakdownGrid fine = grid;
    fine.alpha_step = grid.alpha_step / 10.0;
    const BreakdownResult refined = corals_breakdown_search(fine);
    CHECK(std::abs(refined.alpha_star - free.alpha_star) <=
          grid.alpha_step + 1e-12);
}

TEST_CASE("searches: empty feasible region") {
    BreakdownGrid coarse;
    coarse.alpha_step = 0.05;  // the smallest grid alpha already violates C1
    CHECK_THROWS_AS(crr_breakdown_search(coarse), EmptyFeasible);
    CHECK_THROWS_AS(corals_breakdown_search(coarse), EmptyFeasible);
}

TEST_CASE("empirical_breakdown: prefix semantics at toy scale") {
    GenConfig gen;
    gen.n = 200;
    gen.d = 5;
    gen.sigma = 1.0;
    gen.seed = 31;
    FitterSpec crr;
    crr.id = "crr";

    // alpha grid {0} with a sane threshold returns 0.
    CHECK(empirical_breakdown(crr, gen, AttackKind::kOaa, {0.0}, 1.0, 3) ==
          0.0);
    // An impossible threshold fails at the first level.
    CHECK(empirical_breakdown(crr, gen, AttackKind::kOaa, {0.0, 0.1}, 1e-12,
                              3) == 0.0);
    // A generous threshold accepts the whole grid.
    CHECK(empirical_breakdown(crr, gen, AttackKind::kOaa, {0.05, 0.1, 0.2},
                              1e9, 3) == 0.2);
}

TEST_CASE("mean_l2_error: deterministic and thread-count invariant") {
    GenConfig gen;
    gen.n = 200;
    gen.d = 5;
    gen.seed = 57;
    FitterSpec crr;
    crr.id = "crr";
    const double a =
        mean_l2_error(crr, gen, AttackKind::kOaa, 0.2, 8, /*threads=*/1);
    const double b =
        mean_l2_error(crr, gen, AttackKind::kOaa, 0.2, 8, /*threads=*/4);
    CHECK(a == b);
    CHECK(a < 1.0);
}
