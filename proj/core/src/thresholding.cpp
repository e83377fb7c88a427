#include "rewrap/thresholding.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace rewrap {

namespace {

void check_budget(const Vector& v, int k) {
    if (k < 0 || k > v.size())
        throw BudgetOutOfRange("threshold: k = " + std::to_string(k) +
                               " out of [0, " + std::to_string(v.size()) + "]");
}

// Selects the first k indices under `less`, returned sorted ascending.
template <typename Less>
std::vector<int> select_k(Eigen::Index n, int k, Less less) {
    std::vector<int> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    if (k < n)
        std::nth_element(idx.begin(), idx.begin() + k, idx.end(), less);
    idx.resize(k);
    std::sort(idx.begin(), idx.end());
    return idx;
}

}  // namespace

std::vector<int> top_k_support(const Vector& v, int k) {
    check_budget(v, k);
    return select_k(v.size(), k, [&v](int a, int b) {
        const double ma = std::abs(v[a]), mb = std::abs(v[b]);
        if (ma != mb) return ma > mb;
        return a < b;
    });
}

Vector hard_threshold(const Vector& v, int k) {
    const std::vector<int> keep = top_k_support(v, k);
    Vector out = Vector::Zero(v.size());
    for (const int i : keep) out[i] = v[i];
    return out;
}

std::vector<int> ht_support(const Vector& v, int k) {
    check_budget(v, k);
    return select_k(v.size(), k, [&v](int a, int b) {
        const double ma = std::abs(v[a]), mb = std::abs(v[b]);
        if (ma != mb) return ma < mb;
        return a < b;
    });
}

}  // namespace rewrap
