#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "digraphon/digraphon.hpp"
#include "digraphon/dirm.hpp"
#include "digraphon/exec.hpp"
#include "digraphon/rng.hpp"

namespace digraphon {

// Sufficient statistics of a clustered digraph: one 4-tuple per unordered
// class pair {r, s}, r < s (type component a is the edge from the r-side
// vertex toward the s-side vertex), and per class a 3-tuple
// (m00, m_single, m11) with the two single-direction counts merged.
struct PairCounts {
  int k = 0;
  std::vector<std::array<std::int64_t, 4>> off;   // k*(k-1)/2 cells, r < s
  std::vector<std::array<std::int64_t, 3>> diag;  // k cells

  static std::size_t tri_index(int r, int s, int k) {
    // r < s
    return static_cast<std::size_t>(r) * (2 * k - r - 1) / 2 + (s - r - 1);
  }
  const std::array<std::int64_t, 4>& off_cell(int r, int s) const { return off[tri_index(r, s, k)]; }
  std::array<std::int64_t, 4>& off_cell(int r, int s) { return off[tri_index(r, s, k)]; }

  std::int64_t total_pairs() const;

  // Adds (sign=+1) or removes (sign=-1) a vertex of cluster r whose joint
  // types against every cluster are given by links (oriented from the vertex).
  void apply_vertex(int r, const std::vector<std::array<std::int64_t, 4>>& links, int sign);
  void push_cluster();
  void drop_cluster(int r);
};

// Tallies every unordered vertex pair once. Requires a zero diagonal.
PairCounts count_pairs(const Digraph& g, const ClusterAssignment& z, Exec mode = Exec::kAuto);

// Joint types between vertex i and the members of each cluster, oriented
// from i; entry z[i] excludes i itself.
std::vector<std::array<std::int64_t, 4>> vertex_link_counts(const Digraph& g,
                                                            const ClusterAssignment& z, int i);

// log B(theta) = sum_i lgamma(theta_i) - lgamma(sum_i theta_i).
// Throws std::invalid_argument on a nonpositive component.
double log_multivariate_beta(std::span<const double> theta);

// Collapsed log p(G | z): Dirichlet-multinomial marginal per cell, with the
// diagonal evaluated on the merged 3-tuple times 2^{-m_single}. Returns
// -infinity when a zero-beta component carries a positive count.
double collapsed_log_likelihood(const PairCounts& counts, const DirmHyperParams& h);

// Log probability of the partition under the CRP with concentration alpha.
double crp_log_prior(const std::vector<int>& sizes, double alpha);

struct GibbsState {
  ClusterAssignment z;
  PairCounts counts;
  double loglik = 0.0;
};

GibbsState make_gibbs_state(const Digraph& g, const ClusterAssignment& init,
                            const DirmHyperParams& h);

// Conditional distribution of z_i given everything else: one entry per
// cluster of z_{-i} (first-appearance order) plus a final new-cluster entry.
// Computed in log space with max subtraction; sums to 1.
std::vector<double> gibbs_conditional(int i, const GibbsState& state, const Digraph& g,
                                      const DirmHyperParams& h);

// Resamples every vertex once in index order, maintaining counts
// incrementally and dropping emptied clusters. One uniform per vertex.
void gibbs_sweep(GibbsState& state, const Digraph& g, const DirmHyperParams& h, Rng& rng);
GibbsState gibbs_sweep(GibbsState state, const Digraph& g, const DirmHyperParams& h,
                       std::uint64_t seed);

// Posterior-mode cell weights (m + beta) / N; diagonal computed on the
// 3-tuple and split evenly between 01 and 10.
BlockWeights map_weights(const PairCounts& counts, const DirmHyperParams& h);

enum class ChainInit { kRandom, kSingleton, kGiven };

struct TraceRecord {
  int iter = 0;
  int num_clusters = 0;
  double log_joint = 0.0;  // collapsed likelihood + CRP log prior
  std::vector<int> z;
};

struct ChainResult {
  std::vector<TraceRecord> trace;  // iters + 1 records, initial state first
  ClusterAssignment final_z;       // relabeled in first-appearance order
  BlockWeights weights;            // MAP cell weights under final_z
  std::vector<double> class_masses;  // cluster proportions of final_z
  double final_log_joint = 0.0;
};

// Collapsed Gibbs chain. kRandom initializes from a CRP draw on the same
// stream. Throws std::domain_error if the initial clustering has likelihood
// -infinity (data impossible under a zero-beta component).
ChainResult run_chain(const Digraph& g, const DirmHyperParams& h, int iters, std::uint64_t seed,
                      ChainInit init = ChainInit::kRandom,
                      const std::vector<int>* given = nullptr);

double adjusted_rand_index(const std::vector<int>& a, const std::vector<int>& b);

}  // namespace digraphon
