#include "ovc/hungarian.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ovc/errors.hpp"

namespace ovc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Minimum-cost perfect assignment on a square matrix via shortest
// augmenting paths with dual potentials (Jonker-Volgenant style, O(n^3)).
// Returns row -> col.
std::vector<int> solve_square(const Array2<double>& cost) {
  const int n = cost.rows();
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<int> p(n + 1, 0), way(n + 1, 0);
  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::vector<double> minv(n + 1, kInf);
    std::vector<char> used(n + 1, 0);
    do {
      used[j0] = 1;
      const int i0 = p[j0];
      int j1 = 0;
      double delta = kInf;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        double cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0);
  }
  std::vector<int> row_to_col(n, -1);
  for (int j = 1; j <= n; ++j)
    if (p[j] > 0) row_to_col[p[j] - 1] = j - 1;
  return row_to_col;
}

// Best achievable score total restricted to the given rows and columns.
double best_total(const std::vector<int>& rows, const std::vector<int>& cols,
                  const Array2<double>& s) {
  const int nr = static_cast<int>(rows.size());
  const int nc = static_cast<int>(cols.size());
  if (nr == 0 || nc == 0) return 0.0;
  const int n = std::max(nr, nc);
  double maxabs = 0.0;
  for (int i = 0; i < nr; ++i)
    for (int j = 0; j < nc; ++j) maxabs = std::max(maxabs, std::abs(s(rows[i], cols[j])));
  const double sentinel = (maxabs + 1.0) * (n + 1);
  Array2<double> cost(n, n, sentinel);
  for (int i = 0; i < nr; ++i)
    for (int j = 0; j < nc; ++j) cost(i, j) = -s(rows[i], cols[j]);
  std::vector<int> sol = solve_square(cost);
  double total = 0.0;
  for (int i = 0; i < nr; ++i)
    if (sol[i] < nc) total += s(rows[i], cols[sol[i]]);
  return total;
}

}  // namespace

Assignment hungarian_max(const Array2<double>& scores) {
  const int n = scores.rows();
  const int m = scores.cols();
  Assignment out;
  if (n == 0 || m == 0) return out;
  for (double v : scores.values())
    if (!std::isfinite(v)) throw ValidationError("hungarian_max: non-finite score");

  std::vector<int> all_rows(n), all_cols(m);
  for (int i = 0; i < n; ++i) all_rows[i] = i;
  for (int j = 0; j < m; ++j) all_cols[j] = j;
  const double best = best_total(all_rows, all_cols, scores);
  const double tol = 1e-9 * (1.0 + std::abs(best));
  const size_t want = static_cast<size_t>(std::min(n, m));

  // Fix pairs row by row, taking the smallest column that still reaches the
  // optimum; a row is skipped only when no optimal assignment contains it.
  std::vector<int> rem_rows = all_rows;
  std::vector<int> rem_cols = all_cols;
  double fixed_sum = 0.0;
  for (int r = 0; r < n && out.pairs.size() < want; ++r) {
    std::vector<int> rows_wo_r;
    rows_wo_r.reserve(rem_rows.size() - 1);
    for (int rr : rem_rows)
      if (rr != r) rows_wo_r.push_back(rr);

    int chosen = -1;
    int fallback = -1;
    double fallback_t = -kInf;
    for (size_t ci = 0; ci < rem_cols.size(); ++ci) {
      int c = rem_cols[ci];
      std::vector<int> cols_wo_c;
      cols_wo_c.reserve(rem_cols.size() - 1);
      for (int cc : rem_cols)
        if (cc != c) cols_wo_c.push_back(cc);
      double t = fixed_sum + scores(r, c) + best_total(rows_wo_r, cols_wo_c, scores);
      if (t >= best - tol) {
        chosen = c;
        break;
      }
      if (t > fallback_t) {
        fallback_t = t;
        fallback = c;
      }
    }
    bool may_skip = rows_wo_r.size() >= want - out.pairs.size();
    if (chosen < 0 && !may_skip && fallback >= 0) chosen = fallback;  // numerical safety net
    if (chosen >= 0) {
      out.pairs.emplace_back(r, chosen);
      fixed_sum += scores(r, chosen);
      std::erase(rem_cols, chosen);
    }
    rem_rows = std::move(rows_wo_r);
  }

  out.total = 0.0;
  for (const auto& [r, c] : out.pairs) out.total += scores(r, c);
  return out;
}

}  // namespace ovc
