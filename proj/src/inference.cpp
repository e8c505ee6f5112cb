#include "digraphon/inference.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace digraphon {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
const double kLog2 = std::log(2.0);

// log B(m + beta) - log B(beta) over the positive-beta components;
// -infinity if a zero-beta component has a positive count.
double log_dm(const std::int64_t* m, const double* beta, int len) {
  double num = 0.0;
  double bsum = 0.0;
  std::int64_t msum = 0;
  for (int t = 0; t < len; ++t) {
    if (beta[t] == 0.0) {
      if (m[t] != 0) return kNegInf;
      continue;
    }
    num += std::lgamma(m[t] + beta[t]) - std::lgamma(beta[t]);
    bsum += beta[t];
    msum += m[t];
  }
  return num - (std::lgamma(msum + bsum) - std::lgamma(bsum));
}

// Contribution of a diagonal cell, including the 2^{-m_single} factor.
double log_diag_cell(const std::array<std::int64_t, 3>& m, const std::array<double, 3>& beta) {
  double v = log_dm(m.data(), beta.data(), 3);
  return v == kNegInf ? kNegInf : v - static_cast<double>(m[1]) * kLog2;
}

void require_zero_diagonal(const Digraph& g, const char* what) {
  for (int i = 0; i < g.n; ++i)
    if (g(i, i)) throw std::invalid_argument(std::string(what) + ": graph must have a zero diagonal");
}

std::array<std::int64_t, 4> flip_links(const std::array<std::int64_t, 4>& t) {
  return {t[0], t[2], t[1], t[3]};
}

// Tallies of vertex i's joint types against each cluster of z, skipping i.
std::vector<std::array<std::int64_t, 4>> link_counts(const Digraph& g, const std::vector<int>& z,
                                                     int k, int i) {
  std::vector<std::array<std::int64_t, 4>> links(k, {0, 0, 0, 0});
  for (int j = 0; j < g.n; ++j) {
    if (j == i) continue;
    ++links[z[j]][pair_type(g(i, j), g(j, i))];
  }
  return links;
}

// Log-likelihood change from inserting a vertex with link tallies `links`
// (oriented from the vertex, one entry per existing cluster) into cluster c
// of `base`; c == base.k proposes a fresh cluster.
double insert_delta(const PairCounts& base, int c,
                    const std::vector<std::array<std::int64_t, 4>>& links,
                    const DirmHyperParams& h) {
  const std::array<double, 3> bdiag = h.diagonal_beta();
  const int k = base.k;
  double delta = 0.0;
  for (int s = 0; s < k; ++s) {
    if (s == c) continue;
    const std::array<std::int64_t, 4>& add = c < s ? links[s] : flip_links(links[s]);
    if (add[0] == 0 && add[1] == 0 && add[2] == 0 && add[3] == 0) continue;
    std::array<std::int64_t, 4> cell{0, 0, 0, 0};
    if (c < k) cell = base.off_cell(std::min(c, s), std::max(c, s));
    std::array<std::int64_t, 4> upd = cell;
    for (int t = 0; t < 4; ++t) upd[t] += add[t];
    double after = log_dm(upd.data(), h.beta.data(), 4);
    if (after == kNegInf) return kNegInf;
    delta += after - log_dm(cell.data(), h.beta.data(), 4);
  }
  if (c < k) {
    const std::array<std::int64_t, 4>& t = links[c];
    if (t[0] || t[1] || t[2] || t[3]) {
      const std::array<std::int64_t, 3>& cell = base.diag[c];
      std::array<std::int64_t, 3> upd = {cell[0] + t[0], cell[1] + t[1] + t[2], cell[2] + t[3]};
      double after = log_diag_cell(upd, bdiag);
      if (after == kNegInf) return kNegInf;
      delta += after - log_diag_cell(cell, bdiag);
    }
  }
  // A fresh cluster's diagonal cell stays empty (the vertex is alone in it).
  return delta;
}

// Removes vertex i from counts/sizes in place; returns its link tallies
// (resized if the removal empties a cluster) and the surviving cluster count.
std::vector<std::array<std::int64_t, 4>> detach_vertex(const Digraph& g, std::vector<int>& z,
                                                       std::vector<int>& sizes, PairCounts& counts,
                                                       int i) {
  auto links = link_counts(g, z, static_cast<int>(sizes.size()), i);
  const int r0 = z[i];
  counts.apply_vertex(r0, links, -1);
  --sizes[r0];
  z[i] = -1;
  if (sizes[r0] == 0) {
    counts.drop_cluster(r0);
    sizes.erase(sizes.begin() + r0);
    links.erase(links.begin() + r0);
    for (int& lab : z)
      if (lab > r0) --lab;
  }
  return links;
}

std::vector<double> candidate_log_weights(const PairCounts& counts, const std::vector<int>& sizes,
                                          const std::vector<std::array<std::int64_t, 4>>& links,
                                          const DirmHyperParams& h) {
  const int k = static_cast<int>(sizes.size());
  std::vector<double> lw(k + 1);
  for (int c = 0; c < k; ++c)
    lw[c] = std::log(static_cast<double>(sizes[c])) + insert_delta(counts, c, links, h);
  lw[k] = std::log(h.alpha) + insert_delta(counts, k, links, h);
  return lw;
}

std::vector<double> normalize_log_weights(std::vector<double> lw) {
  double mx = kNegInf;
  for (double v : lw) mx = std::max(mx, v);
  if (mx == kNegInf)
    throw std::domain_error("gibbs: every candidate has zero probability (data impossible under the prior)");
  double sum = 0.0;
  for (double& v : lw) {
    v = std::exp(v - mx);
    sum += v;
  }
  for (double& v : lw) v /= sum;
  return lw;
}

}  // namespace

std::int64_t PairCounts::total_pairs() const {
  std::int64_t total = 0;
  for (const auto& c : off) total += c[0] + c[1] + c[2] + c[3];
  for (const auto& c : diag) total += c[0] + c[1] + c[2];
  return total;
}

void PairCounts::apply_vertex(int r, const std::vector<std::array<std::int64_t, 4>>& links,
                              int sign) {
  for (int s = 0; s < k; ++s) {
    const auto& t = links[s];
    if (s == r) {
      diag[r][0] += sign * t[0];
      diag[r][1] += sign * (t[1] + t[2]);
      diag[r][2] += sign * t[3];
    } else {
      const std::array<std::int64_t, 4> add = r < s ? t : flip_links(t);
      auto& cell = off_cell(std::min(r, s), std::max(r, s));
      for (int a = 0; a < 4; ++a) cell[a] += sign * add[a];
    }
  }
}

void PairCounts::push_cluster() {
  ++k;
  diag.push_back({0, 0, 0});
  // New off cells (r, k-1) for r < k-1 sit at positions tri_index(r, k-1, k);
  // rebuilding keeps the triangular layout consistent.
  std::vector<std::array<std::int64_t, 4>> rebuilt(static_cast<std::size_t>(k) * (k - 1) / 2,
                                                   {0, 0, 0, 0});
  for (int r = 0; r < k - 1; ++r)
    for (int s = r + 1; s < k - 1; ++s)
      rebuilt[tri_index(r, s, k)] = off[tri_index(r, s, k - 1)];
  off = std::move(rebuilt);
}

void PairCounts::drop_cluster(int r) {
  std::vector<std::array<std::int64_t, 4>> rebuilt;
  rebuilt.assign(static_cast<std::size_t>(k - 1) * (k - 2) / 2, {0, 0, 0, 0});
  for (int a = 0; a < k; ++a) {
    if (a == r) continue;
    for (int b = a + 1; b < k; ++b) {
      if (b == r) continue;
      int na = a < r ? a : a - 1;
      int nb = b < r ? b : b - 1;
      rebuilt[tri_index(na, nb, k - 1)] = off[tri_index(a, b, k)];
    }
  }
  off = std::move(rebuilt);
  diag.erase(diag.begin() + r);
  --k;
}

std::vector<std::array<std::int64_t, 4>> vertex_link_counts(const Digraph& g,
                                                            const ClusterAssignment& z, int i) {
  return link_counts(g, z.z, z.num_clusters(), i);
}

PairCounts count_pairs(const Digraph& g, const ClusterAssignment& z, Exec mode) {
  require_zero_diagonal(g, "count_pairs");
  if (z.n() != g.n) throw std::invalid_argument("count_pairs: assignment must cover every vertex");
  const int k = z.num_clusters();
  PairCounts counts;
  counts.k = k;
  counts.off.assign(static_cast<std::size_t>(k) * (k - 1) / 2, {0, 0, 0, 0});
  counts.diag.assign(k, {0, 0, 0});

  auto tally_row = [&g, &z](PairCounts& acc, int i) {
    const int r = z.z[i];
    for (int j = i + 1; j < g.n; ++j) {
      const int s = z.z[j];
      const int t = pair_type(g(i, j), g(j, i));
      if (r == s) {
        auto& cell = acc.diag[r];
        if (t == kNone)
          ++cell[0];
        else if (t == kMutual)
          ++cell[2];
        else
          ++cell[1];
      } else if (r < s) {
        ++acc.off_cell(r, s)[t];
      } else {
        ++acc.off_cell(s, r)[transpose_type(t)];
      }
    }
  };

  if (use_parallel(mode, g.n)) {
#ifdef _OPENMP
#pragma omp parallel
    {
      PairCounts local = counts;
#pragma omp for schedule(dynamic, 16) nowait
      for (int i = 0; i < g.n; ++i) tally_row(local, i);
#pragma omp critical
      {
        for (std::size_t c = 0; c < counts.off.size(); ++c)
          for (int t = 0; t < 4; ++t) counts.off[c][t] += local.off[c][t];
        for (int r = 0; r < k; ++r)
          for (int t = 0; t < 3; ++t) counts.diag[r][t] += local.diag[r][t];
      }
    }
#endif
  } else {
    for (int i = 0; i < g.n; ++i) tally_row(counts, i);
  }
  return counts;
}

double log_multivariate_beta(std::span<const double> theta) {
  double sum = 0.0;
  double acc = 0.0;
  for (double t : theta) {
    if (!(t > 0.0)) throw std::invalid_argument("log_multivariate_beta: components must be positive");
    acc += std::lgamma(t);
    sum += t;
  }
  return acc - std::lgamma(sum);
}

double collapsed_log_likelihood(const PairCounts& counts, const DirmHyperParams& h) {
  const std::array<double, 3> bdiag = h.diagonal_beta();
  double total = 0.0;
  for (int r = 0; r < counts.k; ++r) {
    for (int s = r + 1; s < counts.k; ++s) {
      double v = log_dm(counts.off_cell(r, s).data(), h.beta.data(), 4);
      if (v == kNegInf) return kNegInf;
      total += v;
    }
    double v = log_diag_cell(counts.diag[r], bdiag);
    if (v == kNegInf) return kNegInf;
    total += v;
  }
  return total;
}

double crp_log_prior(const std::vector<int>& sizes, double alpha) {
  int n = 0;
  double total = 0.0;
  for (int c : sizes) {
    total += std::log(alpha) + std::lgamma(static_cast<double>(c));
    n += c;
  }
  return total + std::lgamma(alpha) - std::lgamma(alpha + n);
}

GibbsState make_gibbs_state(const Digraph& g, const ClusterAssignment& init,
                            const DirmHyperParams& h) {
  check_hyperparams(h);
  GibbsState st;
  st.z = init;
  st.counts = count_pairs(g, init);
  st.loglik = collapsed_log_likelihood(st.counts, h);
  return st;
}

std::vector<double> gibbs_conditional(int i, const GibbsState& state, const Digraph& g,
                                      const DirmHyperParams& h) {
  std::vector<int> z = state.z.z;
  std::vector<int> sizes = state.z.sizes;
  PairCounts counts = state.counts;
  auto links = detach_vertex(g, z, sizes, counts, i);
  return normalize_log_weights(candidate_log_weights(counts, sizes, links, h));
}

void gibbs_sweep(GibbsState& state, const Digraph& g, const DirmHyperParams& h, Rng& rng) {
  for (int i = 0; i < g.n; ++i) {
    auto links = detach_vertex(g, state.z.z, state.z.sizes, state.counts, i);
    auto probs = normalize_log_weights(
        candidate_log_weights(state.counts, state.z.sizes, links, h));
    int c = rng.categorical(probs);
    const int k = static_cast<int>(state.z.sizes.size());
    if (c == k) {
      state.z.sizes.push_back(0);
      state.counts.push_cluster();
      links.push_back({0, 0, 0, 0});
    }
    state.z.z[i] = c;
    ++state.z.sizes[c];
    state.counts.apply_vertex(c, links, +1);
  }
  state.loglik = collapsed_log_likelihood(state.counts, h);
}

GibbsState gibbs_sweep(GibbsState state, const Digraph& g, const DirmHyperParams& h,
                       std::uint64_t seed) {
  Rng rng(seed);
  gibbs_sweep(state, g, h, rng);
  return state;
}

BlockWeights map_weights(const PairCounts& counts, const DirmHyperParams& h) {
  const std::array<double, 3> bdiag = h.diagonal_beta();
  BlockWeights w;
  w.k = counts.k;
  w.eta.assign(static_cast<std::size_t>(w.k) * w.k, Weights4{0, 0, 0, 0});
  for (int r = 0; r < w.k; ++r) {
    for (int s = r + 1; s < w.k; ++s) {
      const auto& m = counts.off_cell(r, s);
      Weights4 cell;
      double total = 0.0;
      for (int t = 0; t < 4; ++t) total += m[t] + h.beta[t];
      for (int t = 0; t < 4; ++t) cell[t] = (m[t] + h.beta[t]) / total;
      w.cell(r, s) = cell;
      w.cell(s, r) = transpose_cell(cell);
    }
    const auto& m = counts.diag[r];
    double total = 0.0;
    for (int t = 0; t < 3; ++t) total += m[t] + bdiag[t];
    double single = (m[1] + bdiag[1]) / total;
    w.cell(r, r) = {(m[0] + bdiag[0]) / total, single / 2.0, single / 2.0,
                    (m[2] + bdiag[2]) / total};
  }
  return w;
}

ChainResult run_chain(const Digraph& g, const DirmHyperParams& h, int iters, std::uint64_t seed,
                      ChainInit init, const std::vector<int>* given) {
  check_hyperparams(h);
  require_zero_diagonal(g, "run_chain");
  if (iters < 0) throw std::invalid_argument("run_chain: need iters >= 0");
  Rng rng(seed);

  ClusterAssignment z0;
  switch (init) {
    case ChainInit::kRandom: z0 = sample_crp(g.n, h.alpha, rng); break;
    case ChainInit::kSingleton: {
      z0.z.resize(g.n);
      for (int i = 0; i < g.n; ++i) z0.z[i] = i;
      z0.sizes.assign(g.n, 1);
      break;
    }
    case ChainInit::kGiven: {
      if (!given || static_cast<int>(given->size()) != g.n)
        throw std::invalid_argument("run_chain: given initialization must cover every vertex");
      z0 = ClusterAssignment::from_labels(*given);
      break;
    }
  }

  GibbsState st = make_gibbs_state(g, z0, h);
  if (st.loglik == kNegInf)
    throw std::domain_error("run_chain: initial clustering impossible under zero-beta prior");

  ChainResult res;
  res.trace.reserve(iters + 1);
  auto record = [&res, &h](int iter, const GibbsState& s) {
    res.trace.push_back(
        {iter, s.z.num_clusters(), s.loglik + crp_log_prior(s.z.sizes, h.alpha), s.z.z});
  };
  record(0, st);
  for (int it = 1; it <= iters; ++it) {
    gibbs_sweep(st, g, h, rng);
    record(it, st);
  }

  res.final_z = ClusterAssignment::from_labels(st.z.z);
  PairCounts final_counts = count_pairs(g, res.final_z);
  res.weights = map_weights(final_counts, h);
  res.class_masses.resize(res.final_z.num_clusters());
  for (int r = 0; r < res.final_z.num_clusters(); ++r)
    res.class_masses[r] = g.n > 0 ? static_cast<double>(res.final_z.sizes[r]) / g.n : 1.0;
  res.final_log_joint = res.trace.back().log_joint;
  return res;
}

double adjusted_rand_index(const std::vector<int>& a, const std::vector<int>& b) {
  if (a.size() != b.size())
    throw std::invalid_argument("adjusted_rand_index: clusterings must have equal length");
  const auto ca = ClusterAssignment::from_labels(a);
  const auto cb = ClusterAssignment::from_labels(b);
  const int ka = ca.num_clusters();
  const int kb = cb.num_clusters();
  std::vector<std::int64_t> joint(static_cast<std::size_t>(ka) * kb, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    ++joint[static_cast<std::size_t>(ca.z[i]) * kb + cb.z[i]];

  auto choose2 = [](std::int64_t m) { return m * (m - 1) / 2; };
  double index = 0.0;
  for (std::int64_t m : joint) index += static_cast<double>(choose2(m));
  double suma = 0.0, sumb = 0.0;
  for (int r = 0; r < ka; ++r) suma += static_cast<double>(choose2(ca.sizes[r]));
  for (int r = 0; r < kb; ++r) sumb += static_cast<double>(choose2(cb.sizes[r]));
  const double pairs = static_cast<double>(choose2(static_cast<std::int64_t>(a.size())));
  if (pairs == 0.0) return 1.0;
  const double expected = suma * sumb / pairs;
  const double maxindex = 0.5 * (suma + sumb);
  if (maxindex == expected) return 1.0;  // both partitions trivial and identical
  return (index - expected) / (maxindex - expected);
}

}  // namespace digraphon
