#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "rw/rational.hpp"

namespace rw {

// Sparse row over Q: (column, coefficient) pairs, sorted by column, no zeros.
using SparseRow = std::vector<std::pair<int, Rat>>;

SparseRow sparse_add(const SparseRow& a, const SparseRow& b);
SparseRow sparse_scale(const SparseRow& a, const Rat& c);
// a + c*b in one pass.
SparseRow sparse_axpy(const SparseRow& a, const Rat& c, const SparseRow& b);

// Incremental reduced row echelon form of a growing row span.
//
// Pivot choice is deterministic: each inserted row is first fully reduced
// against the current pivots, then pivots on its leftmost remaining column.
// The stored pivot rows are kept mutually reduced, so the map is a genuine
// RREF of the span regardless of insertion order.
class RowReducer {
 public:
  // Fully reduces r against the current pivot rows.
  SparseRow reduce(SparseRow r) const;

  // Adds a row to the span. Returns true if the rank grew.
  bool add_row(SparseRow r);

  int rank() const { return static_cast<int>(pivots_.size()); }
  bool in_span(const SparseRow& r) const { return reduce(r).empty(); }

  // pivot column -> normalized row (leading coefficient 1).
  const std::map<int, SparseRow>& pivot_rows() const { return pivots_; }

  // Columns in [0, ncols) that are not pivot columns.
  std::vector<int> free_columns(int ncols) const;

 private:
  std::map<int, SparseRow> pivots_;
};

// Solves sum_i x_i * rows[i] = target exactly; returns nullopt if the target
// is outside the span. Intended for small systems (a handful of rows).
std::optional<std::vector<Rat>> solve_combination(
    const std::vector<SparseRow>& rows, const SparseRow& target);

}  // namespace rw
