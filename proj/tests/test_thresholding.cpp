#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <set>

#include "rewrap/rng.hpp"
#include "rewrap/thresholding.hpp"
#include "test_util.hpp"

using namespace rewrap;

namespace {

// Full-sort oracle: stable sort by (magnitude desc, index asc).
std::vector<int> sort_oracle_top(const Vector& v, int k) {
    std::vector<int> idx(v.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) {
        return std::abs(v[a]) > std::abs(v[b]);
    });
    idx.resize(k);
    std::sort(idx.begin(), idx.end());
    return idx;
}

std::vector<int> sort_oracle_bottom(const Vector& v, int k) {
    std::vector<int> idx(v.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) {
        return std::abs(v[a]) < std::abs(v[b]);
    });
    idx.resize(k);
    std::sort(idx.begin(), idx.end());
    return idx;
}

double sparse_approx_error(const Vector& v, const std::vector<int>& keep) {
    Vector u = v;
    for (const int i : keep) u[i] = 0.0;
    return u.norm();
}

}  // namespace

TEST_CASE("thresholding: examples") {
    Vector v(5);
    v << 3.0, -1.0, 4.0, -1.5, 0.5;
    CHECK(top_k_support(v, 2) == std::vector<int>{0, 2});
    CHECK(ht_support(v, 2) == std::vector<int>{1, 4});

    const Vector h = hard_threshold(v, 2);
    CHECK(h[0] == 3.0);
    CHECK(h[2] == 4.0);
    CHECK(h[1] == 0.0);
    CHECK(h[3] == 0.0);
    CHECK(h[4] == 0.0);

    CHECK(top_k_support(v, 0).empty());
    CHECK(hard_threshold(v, 5) == v);
    CHECK_THROWS_AS(top_k_support(v, 6), BudgetOutOfRange);
    CHECK_THROWS_AS(top_k_support(v, -1), BudgetOutOfRange);
}

TEST_CASE("thresholding: ties break toward the lower index") {
    Vector v(4);
    v << 2.0, -2.0, 2.0, 1.0;
    CHECK(top_k_support(v, 2) == std::vector<int>{0, 1});
    // Smallest-magnitude selection: 1.0 first, then the earliest of the tie.
    CHECK(ht_support(v, 2) == std::vector<int>{0, 3});
}

TEST_CASE("thresholding: brute-force best-k-sparse oracle, n <= 8") {
    Rng rng(101);
    for (int n = 1; n <= 8; ++n) {
        for (int rep = 0; rep < 20; ++rep) {
            const Vector v = testutil::random_vector(n, rng);
            for (int k = 0; k <= n; ++k) {
                const Vector h = hard_threshold(v, k);
                const double err = (v - h).norm();
                // Enumerate every k-subset of positions to keep.
                double best = std::numeric_limits<double>::infinity();
                for (unsigned mask = 0; mask < (1u << n); ++mask) {
                    if (__builtin_popcount(mask) != k) continue;
                    std::vector<int> keep;
                    for (int i = 0; i < n; ++i)
                        if (mask & (1u << i)) keep.push_back(i);
                    best = std::min(best, sparse_approx_error(v, keep));
                }
                if (k == 0) best = v.norm();
                CHECK(err <= best + 1e-12);
            }
        }
    }
}

TEST_CASE("thresholding: full-sort oracle on 1000 random vectors") {
    Rng rng(202);
    for (int rep = 0; rep < 1000; ++rep) {
        const int n = 1 + static_cast<int>(rng.uniform(0.0, 40.0));
        const int k = static_cast<int>(rng.uniform(0.0, n + 1.0));
        const Vector v = testutil::random_vector(n, rng);
        CHECK(top_k_support(v, k) == sort_oracle_top(v, k));
        CHECK(ht_support(v, k) == sort_oracle_bottom(v, k));
    }
}

TEST_CASE("thresholding: duality, nesting, permutation invariance") {
    Rng rng(303);
    for (int rep = 0; rep < 100; ++rep) {
        const int n = 5 + static_cast<int>(rng.uniform(0.0, 20.0));
        const Vector v = testutil::random_vector(n, rng);
        // Continuous entries: ties have probability zero, so the top-k and
        // bottom-(n-k) selections partition the index set.
        for (int k = 0; k <= n; k += 3) {
            const auto top = top_k_support(v, k);
            const auto bot = ht_support(v, n - k);
            std::set<int> all(top.begin(), top.end());
            all.insert(bot.begin(), bot.end());
            CHECK(static_cast<int>(all.size()) == n);
        }
        // Nesting: top-k is contained in top-(k+1).
        for (int k = 0; k < n; ++k) {
            const auto a = top_k_support(v, k);
            const auto b = top_k_support(v, k + 1);
            CHECK(std::includes(b.begin(), b.end(), a.begin(), a.end()));
        }
        // Permutation equivariance under reversal.
        const int k = n / 2;
        const Vector rev = v.reverse();
        auto expected = top_k_support(v, k);
        for (int& i : expected) i = n - 1 - i;
        std::sort(expected.begin(), expected.end());
        CHECK(top_k_support(rev, k) == expected);
    }
}
