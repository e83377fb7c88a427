#pragma once

#include <iosfwd>
#include <string>

#include "rewrap/types.hpp"

namespace rewrap {

/// Text dataset format, version 1:
///   # rewrap-dataset v1 n=<n> d=<d> sigma=<s> seed=<u64>
///   # w_true <d floats>            (optional)
///   # corrupted <indices>          (optional)
/// followed by n lines of d+1 floats (x_1 .. x_d, y). Floats are written
/// with 17 significant digits so a round-trip is bit-faithful.
void write_dataset(std::ostream& os, const RegressionDataset& data);
void write_dataset(const std::string& path, const RegressionDataset& data);

RegressionDataset read_dataset(std::istream& is);
RegressionDataset read_dataset(const std::string& path);

}  // namespace rewrap
