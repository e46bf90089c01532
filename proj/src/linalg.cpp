#include "rw/linalg.hpp"

#include <algorithm>

namespace rw {

SparseRow sparse_axpy(const SparseRow& a, const Rat& c, const SparseRow& b) {
  SparseRow out;
  out.reserve(a.size() + b.size());
  size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      Rat v = c * b[j].second;
      if (v != 0) out.emplace_back(b[j].first, v);
      ++j;
    } else {
      Rat v = a[i].second + c * b[j].second;
      if (v != 0) out.emplace_back(a[i].first, v);
      ++i;
      ++j;
    }
  }
  return out;
}

SparseRow sparse_add(const SparseRow& a, const SparseRow& b) {
  return sparse_axpy(a, Rat(1), b);
}

SparseRow sparse_scale(const SparseRow& a, const Rat& c) {
  SparseRow out;
  if (c == 0) return out;
  out.reserve(a.size());
  for (const auto& [col, v] : a) out.emplace_back(col, c * v);
  return out;
}

SparseRow RowReducer::reduce(SparseRow r) const {
  // Each elimination removes the current leading column, so walk the pivots
  // in increasing column order.
  bool changed = true;
  while (changed && !r.empty()) {
    changed = false;
    for (size_t i = 0; i < r.size();) {
      auto it = pivots_.find(r[i].first);
      if (it == pivots_.end()) {
        ++i;
        continue;
      }
      r = sparse_axpy(r, -r[i].second, it->second);
      changed = true;
      break;
    }
  }
  return r;
}

bool RowReducer::add_row(SparseRow r) {
  r = reduce(std::move(r));
  if (r.empty()) return false;
  const int lead = r.front().first;
  Rat inv = 1 / r.front().second;
  r = sparse_scale(r, inv);
  // Keep existing pivot rows reduced against the new one.
  for (auto& [col, row] : pivots_) {
    auto it = std::lower_bound(
        row.begin(), row.end(), lead,
        [](const std::pair<int, Rat>& e, int c) { return e.first < c; });
    if (it != row.end() && it->first == lead) {
      row = sparse_axpy(row, -it->second, r);
    }
  }
  pivots_.emplace(lead, std::move(r));
  return true;
}

std::vector<int> RowReducer::free_columns(int ncols) const {
  std::vector<int> out;
  for (int c = 0; c < ncols; ++c) {
    if (!pivots_.count(c)) out.push_back(c);
  }
  return out;
}

std::optional<std::vector<Rat>> solve_combination(
    const std::vector<SparseRow>& rows, const SparseRow& target) {
  // Dense Gaussian elimination on the transposed system: one equation per
  // column that appears anywhere, unknowns x_i.
  std::vector<int> cols;
  for (const auto& r : rows)
    for (const auto& [c, v] : r) cols.push_back(c);
  for (const auto& [c, v] : target) cols.push_back(c);
  std::sort(cols.begin(), cols.end());
  cols.erase(std::unique(cols.begin(), cols.end()), cols.end());

  const size_t m = cols.size(), n = rows.size();
  auto colindex = [&](int c) {
    return static_cast<size_t>(
        std::lower_bound(cols.begin(), cols.end(), c) - cols.begin());
  };
  std::vector<std::vector<Rat>> a(m, std::vector<Rat>(n + 1, Rat(0)));
  for (size_t i = 0; i < n; ++i)
    for (const auto& [c, v] : rows[i]) a[colindex(c)][i] = v;
  for (const auto& [c, v] : target) a[colindex(c)][n] = v;

  std::vector<size_t> pivot_of_row;
  size_t row = 0;
  for (size_t col = 0; col < n && row < m; ++col) {
    size_t sel = row;
    while (sel < m && a[sel][col] == 0) ++sel;
    if (sel == m) continue;
    std::swap(a[sel], a[row]);
    Rat inv = 1 / a[row][col];
    for (size_t j = col; j <= n; ++j) a[row][j] *= inv;
    for (size_t i = 0; i < m; ++i) {
      if (i == row || a[i][col] == 0) continue;
      Rat f = a[i][col];
      for (size_t j = col; j <= n; ++j) a[i][j] -= f * a[row][j];
    }
    pivot_of_row.push_back(col);
    ++row;
  }
  // Inconsistent if any remaining row is (0 ... 0 | nonzero).
  for (size_t i = row; i < m; ++i) {
    if (a[i][n] != 0) return std::nullopt;
  }
  std::vector<Rat> x(n, Rat(0));
  for (size_t i = 0; i < pivot_of_row.size(); ++i) x[pivot_of_row[i]] = a[i][n];
  return x;
}

}  // namespace rw
