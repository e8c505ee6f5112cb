#include "digraphon/irm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace digraphon {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// log of the Beta-Binomial marginal of one ordered cell with e edges among
// m ordered slots, without the binomial coefficient (edge positions are
// fixed, not exchangeable counts).
double cell_marginal(std::int64_t e, std::int64_t m, const IrmHyperParams& h) {
  return std::lgamma(e + h.beta_edge) + std::lgamma(m - e + h.beta_nonedge) -
         std::lgamma(m + h.beta_edge + h.beta_nonedge) -
         (std::lgamma(h.beta_edge) + std::lgamma(h.beta_nonedge) -
          std::lgamma(h.beta_edge + h.beta_nonedge));
}

std::int64_t cell_slots(const std::vector<int>& sizes, int r, int s) {
  return r == s ? static_cast<std::int64_t>(sizes[r]) * (sizes[r] - 1)
                : static_cast<std::int64_t>(sizes[r]) * sizes[s];
}

struct IrmState {
  std::vector<int> z;
  std::vector<int> sizes;
  IrmCounts counts;
};

// Out/in edge tallies of vertex i against each cluster, skipping i.
void io_counts(const Digraph& g, const std::vector<int>& z, int k, int i,
               std::vector<std::int64_t>& out, std::vector<std::int64_t>& in) {
  out.assign(k, 0);
  in.assign(k, 0);
  for (int j = 0; j < g.n; ++j) {
    if (j == i) continue;
    out[z[j]] += g(i, j);
    in[z[j]] += g(j, i);
  }
}

void drop_cluster(IrmState& st, int r) {
  const int k = st.counts.k;
  IrmCounts rebuilt;
  rebuilt.k = k - 1;
  rebuilt.edges.assign(static_cast<std::size_t>(k - 1) * (k - 1), 0);
  for (int a = 0; a < k; ++a) {
    if (a == r) continue;
    for (int b = 0; b < k; ++b) {
      if (b == r) continue;
      rebuilt.cell(a < r ? a : a - 1, b < r ? b : b - 1) = st.counts.cell(a, b);
    }
  }
  st.counts = std::move(rebuilt);
  st.sizes.erase(st.sizes.begin() + r);
  for (int& lab : st.z)
    if (lab > r) --lab;
}

void push_cluster(IrmState& st) {
  const int k = st.counts.k;
  IrmCounts rebuilt;
  rebuilt.k = k + 1;
  rebuilt.edges.assign(static_cast<std::size_t>(k + 1) * (k + 1), 0);
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b) rebuilt.cell(a, b) = st.counts.cell(a, b);
  st.counts = std::move(rebuilt);
  st.sizes.push_back(0);
}

// Likelihood change from inserting a vertex with the given out/in tallies
// into cluster c; c == k proposes a fresh cluster.
double insert_delta(const IrmState& st, int c, const std::vector<std::int64_t>& out,
                    const std::vector<std::int64_t>& in, const IrmHyperParams& h) {
  const int k = st.counts.k;
  double delta = 0.0;
  for (int s = 0; s < k; ++s) {
    if (s == c) continue;
    const std::int64_t cs = st.sizes[s];
    if (cs == 0) continue;
    const std::int64_t base_out = c < k ? st.counts.cell(c, s) : 0;
    const std::int64_t base_in = c < k ? st.counts.cell(s, c) : 0;
    const std::int64_t slots = c < k ? cell_slots(st.sizes, c, s) : 0;
    delta += cell_marginal(base_out + out[s], slots + cs, h) - cell_marginal(base_out, slots, h);
    delta += cell_marginal(base_in + in[s], slots + cs, h) - cell_marginal(base_in, slots, h);
  }
  if (c < k) {
    const std::int64_t cc = st.sizes[c];
    const std::int64_t base = st.counts.cell(c, c);
    const std::int64_t slots = cell_slots(st.sizes, c, c);
    delta += cell_marginal(base + out[c] + in[c], slots + 2 * cc, h) - cell_marginal(base, slots, h);
  }
  return delta;
}

void detach(IrmState& st, const Digraph& g, int i, std::vector<std::int64_t>& out,
            std::vector<std::int64_t>& in) {
  io_counts(g, st.z, st.counts.k, i, out, in);
  const int r0 = st.z[i];
  for (int s = 0; s < st.counts.k; ++s) {
    st.counts.cell(r0, s) -= out[s];
    st.counts.cell(s, r0) -= in[s];
  }
  --st.sizes[r0];
  st.z[i] = -1;
  if (st.sizes[r0] == 0) {
    drop_cluster(st, r0);
    out.erase(out.begin() + r0);
    in.erase(in.begin() + r0);
  }
}

void attach(IrmState& st, int i, int c, std::vector<std::int64_t>& out,
            std::vector<std::int64_t>& in) {
  if (c == st.counts.k) {
    push_cluster(st);
    out.push_back(0);
    in.push_back(0);
  }
  st.z[i] = c;
  ++st.sizes[c];
  for (int s = 0; s < st.counts.k; ++s) {
    st.counts.cell(c, s) += out[s];
    st.counts.cell(s, c) += in[s];
  }
}

}  // namespace

void check_hyperparams(const IrmHyperParams& h) {
  if (!(h.alpha > 0.0)) throw std::invalid_argument("irm hyperparams: alpha must be positive");
  if (!(h.beta_edge > 0.0) || !(h.beta_nonedge > 0.0))
    throw std::invalid_argument("irm hyperparams: beta components must be positive");
}

IrmCounts irm_count_edges(const Digraph& g, const ClusterAssignment& z) {
  for (int i = 0; i < g.n; ++i)
    if (g(i, i)) throw std::invalid_argument("irm_count_edges: graph must have a zero diagonal");
  if (z.n() != g.n) throw std::invalid_argument("irm_count_edges: assignment must cover every vertex");
  IrmCounts counts;
  counts.k = z.num_clusters();
  counts.edges.assign(static_cast<std::size_t>(counts.k) * counts.k, 0);
  for (int i = 0; i < g.n; ++i)
    for (int j = 0; j < g.n; ++j)
      if (i != j && g(i, j)) ++counts.cell(z.z[i], z.z[j]);
  return counts;
}

double irm_collapsed_log_likelihood(const IrmCounts& counts, const std::vector<int>& sizes,
                                    const IrmHyperParams& h) {
  double total = 0.0;
  for (int r = 0; r < counts.k; ++r)
    for (int s = 0; s < counts.k; ++s)
      total += cell_marginal(counts.cell(r, s), cell_slots(sizes, r, s), h);
  return total;
}

std::vector<std::vector<double>> irm_map_edge_probs(const IrmCounts& counts,
                                                    const std::vector<int>& sizes,
                                                    const IrmHyperParams& h) {
  std::vector<std::vector<double>> p(counts.k, std::vector<double>(counts.k, 0.0));
  for (int r = 0; r < counts.k; ++r)
    for (int s = 0; s < counts.k; ++s)
      p[r][s] = (counts.cell(r, s) + h.beta_edge) /
                (cell_slots(sizes, r, s) + h.beta_edge + h.beta_nonedge);
  return p;
}

ChainResult run_chain_irm(const Digraph& g, const IrmHyperParams& h, int iters,
                          std::uint64_t seed, ChainInit init, const std::vector<int>* given) {
  check_hyperparams(h);
  for (int i = 0; i < g.n; ++i)
    if (g(i, i)) throw std::invalid_argument("run_chain_irm: graph must have a zero diagonal");
  if (iters < 0) throw std::invalid_argument("run_chain_irm: need iters >= 0");
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
    case ChainInit::kGiven:
      if (!given || static_cast<int>(given->size()) != g.n)
        throw std::invalid_argument("run_chain_irm: given initialization must cover every vertex");
      z0 = ClusterAssignment::from_labels(*given);
      break;
  }

  IrmState st{z0.z, z0.sizes, irm_count_edges(g, z0)};

  ChainResult res;
  res.trace.reserve(iters + 1);
  auto record = [&res, &st, &h](int iter) {
    res.trace.push_back({iter, static_cast<int>(st.sizes.size()),
                         irm_collapsed_log_likelihood(st.counts, st.sizes, h) +
                             crp_log_prior(st.sizes, h.alpha),
                         st.z});
  };
  record(0);

  std::vector<std::int64_t> out, in;
  for (int it = 1; it <= iters; ++it) {
    for (int i = 0; i < g.n; ++i) {
      detach(st, g, i, out, in);
      const int k = st.counts.k;
      std::vector<double> lw(k + 1);
      for (int c = 0; c < k; ++c)
        lw[c] = std::log(static_cast<double>(st.sizes[c])) + insert_delta(st, c, out, in, h);
      lw[k] = std::log(h.alpha) + insert_delta(st, k, out, in, h);
      double mx = kNegInf;
      for (double v : lw) mx = std::max(mx, v);
      double sum = 0.0;
      for (double& v : lw) {
        v = std::exp(v - mx);
        sum += v;
      }
      for (double& v : lw) v /= sum;
      attach(st, i, rng.categorical(lw), out, in);
    }
    record(it);
  }

  res.final_z = ClusterAssignment::from_labels(st.z);
  IrmCounts final_counts = irm_count_edges(g, res.final_z);
  auto p = irm_map_edge_probs(final_counts, res.final_z.sizes, h);
  // Embed the independent-direction MAP as digraphon-style joint cells.
  BlockWeights w;
  w.k = final_counts.k;
  w.eta.assign(static_cast<std::size_t>(w.k) * w.k, Weights4{0, 0, 0, 0});
  for (int r = 0; r < w.k; ++r) {
    for (int s = 0; s < w.k; ++s) {
      const double pf = p[r][s];
      const double pb = p[s][r];
      const double both = pf * pb;
      w.cell(r, s) = {(1.0 - pf) * (1.0 - pb), pb - both, pf - both, both};
    }
  }
  res.weights = std::move(w);
  res.class_masses.resize(res.final_z.num_clusters());
  for (int r = 0; r < res.final_z.num_clusters(); ++r)
    res.class_masses[r] = g.n > 0 ? static_cast<double>(res.final_z.sizes[r]) / g.n : 1.0;
  res.final_log_joint = res.trace.back().log_joint;
  return res;
}

}  // namespace digraphon
