#pragma once

// Sparse linear algebra over GF(2). Columns are strictly increasing row-index
// lists; adding two columns is their symmetric difference.

#include <cstdint>
#include <functional>
#include <vector>

#include "coxfix/bitset.hpp"

namespace coxfix::gf2 {

using Column = std::vector<std::uint32_t>;

/// a <- a + b over GF(2).
inline void add_into(Column& a, const Column& b, Column& scratch) {
  scratch.clear();
  scratch.reserve(a.size() + b.size());
  auto i = a.cbegin();
  auto j = b.cbegin();
  while (i != a.cend() && j != b.cend()) {
    if (*i < *j) scratch.push_back(*i++);
    else if (*j < *i) scratch.push_back(*j++);
    else {
      ++i;
      ++j;
    }
  }
  scratch.insert(scratch.end(), i, a.cend());
  scratch.insert(scratch.end(), j, b.cend());
  a.swap(scratch);
}

/// Column reduction by lowest nonzero row (the standard persistence
/// reduction, here only used for its rank). Columns are produced on demand
/// by `column(j, out)`; `skip(j)` marks columns known to reduce to zero.
/// `on_pivot(j, row)` is told each pivot so callers can clear columns of the
/// next boundary map down.
class Reducer {
 public:
  explicit Reducer(std::size_t rows) : pivot_col_(rows, -1) {}

  template <class ColumnFn, class SkipFn, class PivotFn>
  std::size_t rank(std::size_t cols, ColumnFn&& column, SkipFn&& skip, PivotFn&& on_pivot) {
    Column col, scratch;
    std::size_t r = 0;
    for (std::size_t j = 0; j < cols; ++j) {
      if (skip(j)) continue;
      col.clear();
      column(j, col);
      while (!col.empty()) {
        const std::int64_t p = pivot_col_[col.back()];
        if (p < 0) break;
        add_into(col, reduced_[static_cast<std::size_t>(p)], scratch);
      }
      if (col.empty()) continue;
      pivot_col_[col.back()] = static_cast<std::int64_t>(reduced_.size());
      on_pivot(j, col.back());
      reduced_.push_back(col);
      ++r;
    }
    return r;
  }

 private:
  std::vector<std::int64_t> pivot_col_;
  std::vector<Column> reduced_;
};

/// Rank of an explicit sparse matrix given by columns.
inline std::size_t rank(std::size_t rows, const std::vector<Column>& cols) {
  Reducer red(rows);
  return red.rank(
      cols.size(), [&](std::size_t j, Column& out) { out = cols[j]; }, [](std::size_t) { return false; },
      [](std::size_t, std::uint32_t) {});
}

/// Rank of a dense matrix given as bitset rows, by Gaussian elimination.
inline std::size_t rank_dense(std::vector<DynBitset> rows) {
  std::size_t r = 0;
  const std::size_t width = rows.empty() ? 0 : rows.front().size();
  for (std::size_t c = 0; c < width && r < rows.size(); ++c) {
    std::size_t p = r;
    while (p < rows.size() && !rows[p].test(c)) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[r], rows[p]);
    for (std::size_t i = 0; i < rows.size(); ++i)
      if (i != r && rows[i].test(c)) rows[i] ^= rows[r];
    ++r;
  }
  return r;
}

}  // namespace coxfix::gf2
