#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "digraphon/digraphon.hpp"
#include "digraphon/exec.hpp"
#include "digraphon/rng.hpp"

namespace digraphon {

// Hyperparameters of the nonparametric block prior: DP concentration alpha,
// Dirichlet 4-tuple beta for off-diagonal cells, and an optional 3-tuple
// (b00, b_single, b11) overriding the diagonal-cell Dirichlet (the default
// merges the single-direction components of beta).
struct DirmHyperParams {
  double alpha = 1.0;
  std::array<double, 4> beta{1.0, 1.0, 1.0, 1.0};
  std::optional<std::array<double, 3>> beta_diag;
  int truncation = 50;

  std::array<double, 3> diagonal_beta() const {
    if (beta_diag) return *beta_diag;
    return {beta[0], beta[1] + beta[2], beta[3]};
  }
};

// Throws std::invalid_argument if any invariant fails (alpha > 0, beta
// components nonnegative and not all zero, same for the diagonal override,
// truncation >= 1).
void check_hyperparams(const DirmHyperParams& h);

// Truncated stick-breaking weights: v[t] = X_t * prod_{i<t} (1 - X_i) for
// t < K-1 with X_i ~ Beta(1, alpha); the last class takes the residual mass.
struct StickPartition {
  std::vector<double> v;
};

// Per-class-pair probability 4-tuples (a digraphon without the partition).
struct BlockWeights {
  int k = 0;
  std::vector<Weights4> eta;  // k*k cells, row-major

  const Weights4& cell(int r, int s) const { return eta[static_cast<std::size_t>(r) * k + s]; }
  Weights4& cell(int r, int s) { return eta[static_cast<std::size_t>(r) * k + s]; }
};

// Cluster labels compacted in first-appearance order plus their sizes.
struct ClusterAssignment {
  std::vector<int> z;
  std::vector<int> sizes;

  int n() const { return static_cast<int>(z.size()); }
  int num_clusters() const { return static_cast<int>(sizes.size()); }

  // Relabels arbitrary labels to 0..k-1 in first-appearance order.
  static ClusterAssignment from_labels(const std::vector<int>& labels);
};

StickPartition sample_stick_partition(const DirmHyperParams& h, Rng& rng);
StickPartition sample_stick_partition(const DirmHyperParams& h, std::uint64_t seed);

// Off-diagonal cells r < s ~ Dirichlet(beta); diagonal cells drawn on the
// 3-tuple (w00, w_single, w11) ~ Dirichlet(diagonal_beta) and split evenly
// between 01 and 10; lower triangle filled by transpose symmetry. Components
// with a zero Dirichlet parameter receive exactly zero weight.
BlockWeights sample_block_weights(int k, const DirmHyperParams& h, Rng& rng);
BlockWeights sample_block_weights(int k, const DirmHyperParams& h, std::uint64_t seed);

// Random digraphon draw: stick-breaking cuts (zero-width classes dropped),
// block weights per cell, self-loops off.
StepDigraphon sample_dirm_digraphon(const DirmHyperParams& h, std::uint64_t seed);

// Sequential seating: vertex i joins cluster r with probability
// c_r / (i + alpha) and opens a new cluster with probability alpha / (i + alpha).
// Consumes one uniform per vertex after the first.
ClusterAssignment sample_crp(int n, double alpha, Rng& rng);
ClusterAssignment sample_crp(int n, double alpha, std::uint64_t seed);

// One categorical joint-type draw per unordered pair {i, j}, i < j, from the
// cell of the pair's clusters; zero diagonal. Pair draws are read from stream
// positions pair_index(i, j, n) onward.
Digraph sample_graph_given_clusters(const ClusterAssignment& z, const BlockWeights& eta,
                                    std::uint64_t seed, Exec mode = Exec::kAuto);

// Assembles a digraphon from block weights and nonnegative class masses
// (normalized internally; zero-mass classes must not be present).
StepDigraphon digraphon_from_blocks(const BlockWeights& w, const std::vector<double>& masses);

}  // namespace digraphon
