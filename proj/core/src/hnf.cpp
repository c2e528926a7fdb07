#include "qform/hnf.hpp"

#include <algorithm>
#include <utility>

namespace qform {

namespace {

using WideRow = std::vector<Wide>;

void sub_multiple(WideRow& target, const WideRow& source, Wide q) {
  if (q == 0) return;
  for (std::size_t j = 0; j < target.size(); ++j)
    target[j] = guard_wide(target[j] - wide_mul(q, source[j]));
}

// Echelonizes rows[first..] on the leading `width` columns by Euclidean row
// operations. Returns the number of pivot rows produced.
std::size_t echelonize(std::vector<WideRow>& rows, std::size_t width) {
  std::size_t pivot_row = 0;
  for (std::size_t col = 0; col < width && pivot_row < rows.size(); ++col) {
    while (true) {
      std::size_t best = rows.size();
      for (std::size_t i = pivot_row; i < rows.size(); ++i) {
        if (rows[i][col] == 0) continue;
        if (best == rows.size() || (rows[i][col] < 0 ? -rows[i][col] : rows[i][col]) <
                                       (rows[best][col] < 0 ? -rows[best][col] : rows[best][col]))
          best = i;
      }
      if (best == rows.size()) break;
      std::swap(rows[pivot_row], rows[best]);
      bool done = true;
      for (std::size_t i = pivot_row + 1; i < rows.size(); ++i) {
        if (rows[i][col] == 0) continue;
        sub_multiple(rows[i], rows[pivot_row], floor_div(rows[i][col], rows[pivot_row][col]));
        if (rows[i][col] != 0) done = false;
      }
      if (done) {
        if (rows[pivot_row][col] < 0)
          for (auto& x : rows[pivot_row]) x = -x;
        for (std::size_t i = 0; i < pivot_row; ++i)
          sub_multiple(rows[i], rows[pivot_row], floor_div(rows[i][col], rows[pivot_row][col]));
        ++pivot_row;
        break;
      }
    }
  }
  return pivot_row;
}

}  // namespace

std::vector<Vec> hermite_normal_form(std::vector<Vec> rows) {
  if (rows.empty()) return {};
  const std::size_t n = rows[0].size();
  std::vector<WideRow> w;
  for (const auto& r : rows) w.emplace_back(r.begin(), r.end());
  std::size_t rank = echelonize(w, n);
  std::vector<Vec> out;
  for (std::size_t i = 0; i < rank; ++i) {
    Vec r(n);
    for (std::size_t j = 0; j < n; ++j) r[j] = narrow(w[i][j]);
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<Vec> integer_kernel(const std::vector<Vec>& a, std::size_t n) {
  // Row-reduce [Aᵀ | I]; rows whose Aᵀ part vanishes span the kernel.
  const std::size_t m = a.size();
  std::vector<WideRow> w(n, WideRow(m + n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) w[i][j] = a[j][i];
    w[i][m + i] = 1;
  }
  std::size_t rank = echelonize(w, m);
  std::vector<Vec> kernel;
  for (std::size_t i = rank; i < n; ++i) {
    Vec v(n);
    for (std::size_t j = 0; j < n; ++j) v[j] = narrow(w[i][m + j]);
    kernel.push_back(std::move(v));
  }
  return hermite_normal_form(std::move(kernel));
}

}  // namespace qform
