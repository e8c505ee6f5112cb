#include "digraphon/estimators.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace digraphon {

namespace {

std::vector<std::array<std::int64_t, 4>> profile_counts(const Digraph& g, Exec mode) {
  const int n = g.n;
  std::vector<std::array<std::int64_t, 4>> counts(n, {0, 0, 0, 0});
  auto row = [&g, &counts](int i) {
    for (int j = 0; j < g.n; ++j) {
      if (j == i) continue;
      ++counts[i][pair_type(g(i, j), g(j, i))];
    }
  };
  if (use_parallel(mode, n)) {
#pragma omp parallel for schedule(static)
    for (int i = 0; i < n; ++i) row(i);
  } else {
    for (int i = 0; i < n; ++i) row(i);
  }
  return counts;
}

}  // namespace

std::vector<std::array<double, 4>> degree_profiles(const Digraph& g, Exec mode) {
  const auto counts = profile_counts(g, mode);
  std::vector<std::array<double, 4>> profiles(g.n, {0.0, 0.0, 0.0, 0.0});
  const double denom = g.n > 1 ? g.n - 1.0 : 1.0;
  for (int i = 0; i < g.n; ++i)
    for (int t = 0; t < 4; ++t) profiles[i][t] = counts[i][t] / denom;
  return profiles;
}

HistogramEstimate histogram_densities(const Digraph& g, const ClusterAssignment& z) {
  const PairCounts counts = count_pairs(g, z);
  const int k = counts.k;
  HistogramEstimate est;
  est.weights.k = k;
  est.weights.eta.assign(static_cast<std::size_t>(k) * k, Weights4{0.25, 0.25, 0.25, 0.25});
  est.empty_cell.assign(static_cast<std::size_t>(k) * k, 0);
  auto mark_empty = [&est, k](int r, int s) {
    est.empty_cell[static_cast<std::size_t>(r) * k + s] = 1;
    est.empty_cell[static_cast<std::size_t>(s) * k + r] = 1;
  };
  for (int r = 0; r < k; ++r) {
    for (int s = r + 1; s < k; ++s) {
      const auto& m = counts.off_cell(r, s);
      const double total = static_cast<double>(m[0] + m[1] + m[2] + m[3]);
      if (total == 0.0) {
        mark_empty(r, s);
        continue;
      }
      Weights4 cell{m[0] / total, m[1] / total, m[2] / total, m[3] / total};
      est.weights.cell(r, s) = cell;
      est.weights.cell(s, r) = transpose_cell(cell);
    }
    const auto& m = counts.diag[r];
    const double total = static_cast<double>(m[0] + m[1] + m[2]);
    if (total == 0.0) {
      mark_empty(r, r);
      continue;
    }
    est.weights.cell(r, r) = {m[0] / total, m[1] / (2.0 * total), m[1] / (2.0 * total),
                              m[2] / total};
  }
  return est;
}

DegreeSortEstimate degree_sort_estimate(const Digraph& g, int k) {
  if (k < 1 || k > std::max(g.n, 1))
    throw std::invalid_argument("degree_sort_estimate: need 1 <= k <= n");
  const auto counts = profile_counts(g, Exec::kAuto);

  DegreeSortEstimate out;
  out.ordering.resize(g.n);
  std::iota(out.ordering.begin(), out.ordering.end(), 0);
  // Integer counts share the denominator n-1, so comparing them compares the
  // normalized profiles without rounding.
  std::stable_sort(out.ordering.begin(), out.ordering.end(),
                   [&counts](int a, int b) { return counts[a] < counts[b]; });

  out.groups.z.assign(g.n, 0);
  const int base = g.n / k;
  for (int pos = 0; pos < g.n; ++pos) {
    int grp = base > 0 ? std::min(pos / base, k - 1) : k - 1;
    out.groups.z[out.ordering[pos]] = grp;
  }
  out.groups.sizes.assign(k, 0);
  for (int lab : out.groups.z) ++out.groups.sizes[lab];

  out.estimate = histogram_densities(g, out.groups);
  return out;
}

}  // namespace digraphon
