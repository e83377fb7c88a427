#pragma once

#include <vector>

#include "rewrap/types.hpp"

namespace rewrap {

/// Indices of the k largest-magnitude entries of v, sorted ascending.
/// Ties are broken by ascending index. Expected O(n) via partial selection.
std::vector<int> top_k_support(const Vector& v, int k);

/// HT_k: keep the k largest-magnitude entries of v, zero the rest.
Vector hard_threshold(const Vector& v, int k);

/// HTT: indices of the k smallest-magnitude entries (the TORRENT active
/// set), sorted ascending. Ties are broken by ascending index.
std::vector<int> ht_support(const Vector& v, int k);

}  // namespace rewrap
