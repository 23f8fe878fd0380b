#pragma once

#include <utility>
#include <vector>

#include "ovc/tensor.hpp"

namespace ovc {

/// One-to-one assignment of rows to columns.
struct Assignment {
  std::vector<std::pair<int, int>> pairs;  // sorted by row
  double total = 0.0;
};

/// Maximum-score assignment of size min(n, m). Scores are negated into a
/// cost matrix, rectangular inputs are padded square with a large sentinel
/// cost, and ties between optimal assignments break toward the
/// lexicographically smallest pair list.
Assignment hungarian_max(const Array2<double>& scores);

}  // namespace ovc
