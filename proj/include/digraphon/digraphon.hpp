#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace digraphon {

// Joint state of (G_ij, G_ji) for an ordered vertex pair (i, j), indexed
// 0..3 in the order 00, 01, 10, 11: bit 1 is the i->j edge, bit 0 the j->i
// edge. Transposing the pair swaps 01 and 10 and fixes 00 and 11.
enum PairType : int { kNone = 0, kReverse = 1, kForward = 2, kMutual = 3 };

constexpr int pair_type(int gij, int gji) { return (gij << 1) | gji; }
constexpr int transpose_type(int t) { return ((t & 1) << 1) | (t >> 1); }

using Weights4 = std::array<double, 4>;

constexpr Weights4 transpose_cell(const Weights4& w) {
  return {w[0], w[2], w[1], w[3]};
}

// Block digraphon: a partition of [0,1] into k classes with a probability
// 4-tuple per class pair (joint law of the two edge directions) and a 0/1
// self-loop indicator per class.
struct StepDigraphon {
  std::vector<double> cuts;       // interior cut points, strictly increasing in (0,1)
  std::vector<Weights4> weights;  // k*k cells, row-major
  std::vector<int> selfloop;      // k entries in {0,1}

  int num_classes() const { return static_cast<int>(selfloop.size()); }
  const Weights4& cell(int r, int s) const { return weights[static_cast<std::size_t>(r) * num_classes() + s]; }
  Weights4& cell(int r, int s) { return weights[static_cast<std::size_t>(r) * num_classes() + s]; }

  // Class containing x: half-open bins [c_t, c_{t+1}), last class closed at 1.
  // Throws std::out_of_range for x outside [0,1].
  int class_of(double x) const;

  // Widths of the k classes.
  std::vector<double> class_masses() const;
};

// Dense directed adjacency matrix; self-loops allowed on the diagonal.
struct Digraph {
  int n = 0;
  std::vector<std::uint8_t> adj;  // n*n row-major

  Digraph() = default;
  explicit Digraph(int n_) : n(n_), adj(static_cast<std::size_t>(n_) * n_, 0) {}

  std::uint8_t operator()(int i, int j) const { return adj[static_cast<std::size_t>(i) * n + j]; }
  std::uint8_t& operator()(int i, int j) { return adj[static_cast<std::size_t>(i) * n + j]; }

  bool operator==(const Digraph&) const = default;
};

// A sampled digraph together with the latent positions that generated it.
struct LatentSample {
  std::vector<double> u;
  Digraph graph;
};

struct ValidationResult {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

// Checks the digraphon invariants: strictly increasing interior cuts, cell
// sums 1 within 1e-12, the three cross-cell symmetries, equal 01/10 mass on
// diagonal cells, entries in [0,1], and {0,1} self-loop values.
ValidationResult validate(const StepDigraphon& d);

// The probability 4-tuple of the cell containing (x, y).
Weights4 evaluate(const StepDigraphon& d, double x, double y);

// Digraphon equivalent to drawing both edge directions independently from an
// asymmetric block function f: cell weights ((1-p)(1-q), (1-p)q, p(1-q), pq)
// with p = f[r][s], q = f[s][r].
StepDigraphon from_asymmetric(const std::vector<std::vector<double>>& f,
                              const std::vector<double>& cuts);

// Digraphon whose samples are undirected: all mass on 00/11, split by a
// symmetric block graphon g.
StepDigraphon undirected_from_graphon(const std::vector<std::vector<double>>& g,
                                      const std::vector<double>& cuts);

// Digraphon whose samples are tournaments, from a block kernel t with
// t[r][s] + t[s][r] = 1 (t[r][s] is the forward-edge probability).
StepDigraphon tournament_from_kernel(const std::vector<std::vector<double>>& t,
                                     const std::vector<double>& cuts);

// k-class step approximation of the uniform random linear order: cross-class
// pairs point from the lower class to the upper one, within-class pairs are
// fair-coin tournaments. Samples are tournaments; intransitivity is confined
// to triples falling inside one class.
StepDigraphon linear_order_digraphon(int k);

// k-class step approximation of the generic DAG digraphon: cross-class pairs
// carry a forward edge with probability 1/2, within-class pairs are empty.
StepDigraphon generic_dag_digraphon(int k);

// Three-block digraphon whose samples (loops removed) are transitively
// closed DAGs: forward probability 1/2 between adjacent blocks, 1 between the
// extreme blocks. with_loops switches every class to self-loop 1 for strict
// reflexive-order semantics.
StepDigraphon poset_block_digraphon(bool with_loops = false);

// Single-class undirected digraphon with edge density p.
StepDigraphon erdos_renyi_digraphon(double p = 0.5);

// Two equal blocks: within-block pairs are mutual-or-absent (probability 1/2
// each), cross-block pairs carry exactly one directed edge (1/2 per
// direction). Both edge-direction marginals are 1/2 everywhere, so the block
// structure is visible only in the joint law.
StepDigraphon half_digraphon();

}  // namespace digraphon
