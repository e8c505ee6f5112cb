#include "digraphon/dirm.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "digraphon/detail/pair_kernel.hpp"

namespace digraphon {

namespace {

bool any_positive(const double* b, int m) {
  for (int t = 0; t < m; ++t)
    if (b[t] > 0.0) return true;
  return false;
}

void check_nonneg_not_all_zero(const double* b, int m, const char* what) {
  for (int t = 0; t < m; ++t)
    if (!(b[t] >= 0.0)) throw std::invalid_argument(std::string(what) + ": components must be nonnegative");
  if (!any_positive(b, m))
    throw std::invalid_argument(std::string(what) + ": at least one component must be positive");
}

// Dirichlet over the positive-parameter components; zero-parameter components
// are degenerate at exactly zero.
void dirichlet(Rng& rng, const double* param, double* out, int m) {
  for (;;) {
    double sum = 0.0;
    for (int t = 0; t < m; ++t) {
      out[t] = param[t] > 0.0 ? rng.gamma(param[t]) : 0.0;
      sum += out[t];
    }
    if (sum > 0.0) {
      for (int t = 0; t < m; ++t) out[t] /= sum;
      return;
    }
  }
}

}  // namespace

void check_hyperparams(const DirmHyperParams& h) {
  if (!(h.alpha > 0.0)) throw std::invalid_argument("hyperparams: alpha must be positive");
  check_nonneg_not_all_zero(h.beta.data(), 4, "hyperparams: beta");
  if (h.beta_diag) check_nonneg_not_all_zero(h.beta_diag->data(), 3, "hyperparams: beta_diag");
  if (h.truncation < 1) throw std::invalid_argument("hyperparams: truncation must be >= 1");
}

ClusterAssignment ClusterAssignment::from_labels(const std::vector<int>& labels) {
  ClusterAssignment a;
  a.z.resize(labels.size());
  std::vector<int> remap;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    int lab = labels[i];
    int idx = -1;
    for (std::size_t r = 0; r < remap.size(); ++r)
      if (remap[r] == lab) { idx = static_cast<int>(r); break; }
    if (idx < 0) {
      idx = static_cast<int>(remap.size());
      remap.push_back(lab);
      a.sizes.push_back(0);
    }
    a.z[i] = idx;
    ++a.sizes[idx];
  }
  return a;
}

StickPartition sample_stick_partition(const DirmHyperParams& h, Rng& rng) {
  check_hyperparams(h);
  const int K = h.truncation;
  StickPartition p;
  p.v.assign(K, 0.0);
  double remaining = 1.0;
  for (int t = 0; t + 1 < K; ++t) {
    // Beta(1, alpha) by inverse CDF; one uniform per stick.
    double x = 1.0 - std::pow(1.0 - rng.next_double(), 1.0 / h.alpha);
    p.v[t] = x * remaining;
    remaining *= 1.0 - x;
  }
  p.v[K - 1] = remaining;
  return p;
}

StickPartition sample_stick_partition(const DirmHyperParams& h, std::uint64_t seed) {
  Rng rng(seed);
  return sample_stick_partition(h, rng);
}

BlockWeights sample_block_weights(int k, const DirmHyperParams& h, Rng& rng) {
  check_hyperparams(h);
  if (k < 1) throw std::invalid_argument("sample_block_weights: need k >= 1");
  BlockWeights w;
  w.k = k;
  w.eta.assign(static_cast<std::size_t>(k) * k, Weights4{0, 0, 0, 0});
  const std::array<double, 3> bdiag = h.diagonal_beta();
  for (int r = 0; r < k; ++r) {
    for (int s = r; s < k; ++s) {
      if (r == s) {
        double tri[3];
        dirichlet(rng, bdiag.data(), tri, 3);
        w.cell(r, r) = {tri[0], tri[1] / 2.0, tri[1] / 2.0, tri[2]};
      } else {
        Weights4 cell;
        dirichlet(rng, h.beta.data(), cell.data(), 4);
        w.cell(r, s) = cell;
        w.cell(s, r) = transpose_cell(cell);
      }
    }
  }
  return w;
}

BlockWeights sample_block_weights(int k, const DirmHyperParams& h, std::uint64_t seed) {
  Rng rng(seed);
  return sample_block_weights(k, h, rng);
}

StepDigraphon sample_dirm_digraphon(const DirmHyperParams& h, std::uint64_t seed) {
  check_hyperparams(h);
  Rng rng(seed);
  StickPartition sticks = sample_stick_partition(h, rng);

  // Cuts from cumulative stick mass; classes too narrow to be representable
  // are dropped (they carry no sampling mass).
  std::vector<double> cuts;
  double acc = 0.0;
  for (int t = 0; t + 1 < h.truncation; ++t) {
    acc += sticks.v[t];
    if (acc < 1.0 && (cuts.empty() || acc > cuts.back())) cuts.push_back(acc);
  }
  const int k = static_cast<int>(cuts.size()) + 1;

  BlockWeights w = sample_block_weights(k, h, rng);
  StepDigraphon d;
  d.cuts = std::move(cuts);
  d.weights = std::move(w.eta);
  d.selfloop.assign(k, 0);
  return d;
}

ClusterAssignment sample_crp(int n, double alpha, Rng& rng) {
  if (n < 0) throw std::invalid_argument("sample_crp: need n >= 0");
  if (!(alpha > 0.0)) throw std::invalid_argument("sample_crp: alpha must be positive");
  ClusterAssignment a;
  a.z.resize(n);
  for (int i = 0; i < n; ++i) {
    if (i == 0) {
      a.z[0] = 0;
      a.sizes.push_back(1);
      continue;
    }
    double total = i + alpha;
    double u = rng.next_double() * total;
    double c = 0.0;
    int pick = static_cast<int>(a.sizes.size());
    for (std::size_t r = 0; r < a.sizes.size(); ++r) {
      c += a.sizes[r];
      if (u < c) { pick = static_cast<int>(r); break; }
    }
    a.z[i] = pick;
    if (pick == static_cast<int>(a.sizes.size()))
      a.sizes.push_back(1);
    else
      ++a.sizes[pick];
  }
  return a;
}

ClusterAssignment sample_crp(int n, double alpha, std::uint64_t seed) {
  Rng rng(seed);
  return sample_crp(n, alpha, rng);
}

Digraph sample_graph_given_clusters(const ClusterAssignment& z, const BlockWeights& eta,
                                    std::uint64_t seed, Exec mode) {
  const int n = z.n();
  for (int i = 0; i < n; ++i)
    if (z.z[i] < 0 || z.z[i] >= eta.k)
      throw std::invalid_argument("sample_graph_given_clusters: class index out of range");
  Digraph g(n);
  auto cell = [&z, &eta](int i, int j) -> const Weights4& { return eta.cell(z.z[i], z.z[j]); };
  detail::sample_pair_types(n, seed, 0, cell, g, mode);
  return g;
}

StepDigraphon digraphon_from_blocks(const BlockWeights& w, const std::vector<double>& masses) {
  if (static_cast<int>(masses.size()) != w.k)
    throw std::invalid_argument("digraphon_from_blocks: need one mass per class");
  double total = 0.0;
  for (double m : masses) {
    if (!(m > 0.0)) throw std::invalid_argument("digraphon_from_blocks: class masses must be positive");
    total += m;
  }
  StepDigraphon d;
  double acc = 0.0;
  for (int t = 0; t + 1 < w.k; ++t) {
    acc += masses[t];
    d.cuts.push_back(acc / total);
  }
  d.weights = w.eta;
  d.selfloop.assign(w.k, 0);
  return d;
}

}  // namespace digraphon
