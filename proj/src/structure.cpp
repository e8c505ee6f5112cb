#include "digraphon/structure.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace digraphon {

bool is_undirected(const Digraph& g) {
  for (int i = 0; i < g.n; ++i) {
    if (g(i, i)) return false;
    for (int j = i + 1; j < g.n; ++j)
      if (g(i, j) != g(j, i)) return false;
  }
  return true;
}

bool is_tournament(const Digraph& g) {
  for (int i = 0; i < g.n; ++i) {
    if (g(i, i)) return false;
    for (int j = i + 1; j < g.n; ++j)
      if (g(i, j) + g(j, i) != 1) return false;
  }
  return true;
}

bool is_dag(const Digraph& g) {
  const int n = g.n;
  std::vector<int> indegree(n, 0);
  for (int i = 0; i < n; ++i) {
    if (g(i, i)) return false;
    for (int j = 0; j < n; ++j) indegree[j] += g(i, j);
  }
  std::vector<int> queue;
  queue.reserve(n);
  for (int j = 0; j < n; ++j)
    if (indegree[j] == 0) queue.push_back(j);
  int removed = 0;
  while (!queue.empty()) {
    int v = queue.back();
    queue.pop_back();
    ++removed;
    for (int j = 0; j < n; ++j)
      if (g(v, j) && --indegree[j] == 0) queue.push_back(j);
  }
  return removed == n;
}

bool is_transitively_closed(const Digraph& g) {
  const int n = g.n;
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i)
      if (g(i, j))
        for (int k = 0; k < n; ++k)
          if (g(j, k) && !g(i, k)) return false;
  return true;
}

Digraph transitive_closure(const Digraph& g) {
  Digraph c = g;
  const int n = g.n;
  for (int m = 0; m < n; ++m)
    for (int i = 0; i < n; ++i)
      if (c(i, m))
        for (int j = 0; j < n; ++j)
          if (c(m, j)) c(i, j) = 1;
  return c;
}

Digraph strip_loops(const Digraph& g) {
  Digraph out = g;
  for (int i = 0; i < g.n; ++i) out(i, i) = 0;
  return out;
}

Digraph permute_vertices(const Digraph& g, const std::vector<int>& perm) {
  if (static_cast<int>(perm.size()) != g.n)
    throw std::invalid_argument("permute_vertices: permutation length must equal vertex count");
  Digraph out(g.n);
  for (int a = 0; a < g.n; ++a)
    for (int b = 0; b < g.n; ++b) out(a, b) = g(perm[a], perm[b]);
  return out;
}

std::vector<int> ascending_latent_order(const std::vector<double>& u) {
  std::vector<int> order(u.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&u](int a, int b) { return u[a] < u[b]; });
  return order;
}

Digraph resort_by_latents(const LatentSample& s) {
  return permute_vertices(s.graph, ascending_latent_order(s.u));
}

}  // namespace digraphon
