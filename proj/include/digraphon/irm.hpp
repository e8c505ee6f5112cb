#pragma once

#include <cstdint>
#include <vector>

#include "digraphon/inference.hpp"

namespace digraphon {

// Baseline block model that treats the two edge directions independently:
// every ordered class pair (r, s) carries an edge probability with a
// Beta(beta_edge, beta_nonedge) prior, collapsed to Beta-Binomial cells.
struct IrmHyperParams {
  double alpha = 1.0;
  double beta_edge = 1.0;
  double beta_nonedge = 1.0;
};

void check_hyperparams(const IrmHyperParams& h);

// Directed edge tallies per ordered class pair; totals follow from sizes
// (c_r * c_s off the diagonal, c_r * (c_r - 1) on it).
struct IrmCounts {
  int k = 0;
  std::vector<std::int64_t> edges;  // k*k, row-major

  std::int64_t& cell(int r, int s) { return edges[static_cast<std::size_t>(r) * k + s]; }
  std::int64_t cell(int r, int s) const { return edges[static_cast<std::size_t>(r) * k + s]; }
};

IrmCounts irm_count_edges(const Digraph& g, const ClusterAssignment& z);

// Collapsed log p(G | z): product of Beta-Binomial marginals over ordered
// class pairs.
double irm_collapsed_log_likelihood(const IrmCounts& counts, const std::vector<int>& sizes,
                                    const IrmHyperParams& h);

// MAP edge probability per ordered class pair, (e + beta_edge) / (n + beta_edge + beta_nonedge).
std::vector<std::vector<double>> irm_map_edge_probs(const IrmCounts& counts,
                                                    const std::vector<int>& sizes,
                                                    const IrmHyperParams& h);

// Collapsed Gibbs chain for the baseline; same trace contract as run_chain.
// The reported weights are the MAP edge probabilities embedded as a
// digraphon-style cell matrix (independent directions per cell).
ChainResult run_chain_irm(const Digraph& g, const IrmHyperParams& h, int iters,
                          std::uint64_t seed, ChainInit init = ChainInit::kRandom,
                          const std::vector<int>* given = nullptr);

}  // namespace digraphon
