#pragma once

#include <vector>

#include "tmmp/exactmath.hpp"

namespace tmmp {

/// Calls fn(indices) for every size-element subset of {0..m-1} in
/// lexicographic order. fn returns false to stop early.
template <typename Fn>
void for_each_subset(Index m, Index size, Fn&& fn) {
  if (size > m || size < 0) return;
  std::vector<Index> idx(static_cast<std::size_t>(size));
  for (Index i = 0; i < size; ++i) idx[i] = i;
  for (;;) {
    if (!fn(static_cast<const std::vector<Index>&>(idx))) return;
    Index i = size - 1;
    while (i >= 0 && idx[i] == m - size + i) --i;
    if (i < 0) return;
    ++idx[i];
    for (Index j = i + 1; j < size; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace tmmp
