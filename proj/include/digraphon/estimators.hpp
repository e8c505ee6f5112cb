#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "digraphon/dirm.hpp"
#include "digraphon/exec.hpp"
#include "digraphon/inference.hpp"

namespace digraphon {

// Per-vertex fractions of the other n-1 vertices in each joint type
// (00, 01, 10, 11), oriented from the vertex.
std::vector<std::array<double, 4>> degree_profiles(const Digraph& g, Exec mode = Exec::kAuto);

// Block-averaged empirical cell weights; cells with no pairs get the uniform
// tuple and are flagged so zero data is never read as an estimated zero.
struct HistogramEstimate {
  BlockWeights weights;
  std::vector<std::uint8_t> empty_cell;  // k*k, mirrors weights layout

  bool cell_empty(int r, int s) const {
    return empty_cell[static_cast<std::size_t>(r) * weights.k + s] != 0;
  }
};

// Empirical frequency of the four joint types per class pair of z. The
// within-class single-direction mass is split evenly between 01 and 10, so
// the output always satisfies the cell symmetries.
HistogramEstimate histogram_densities(const Digraph& g, const ClusterAssignment& z);

struct DegreeSortEstimate {
  std::vector<int> ordering;  // position -> vertex, ascending profile order
  ClusterAssignment groups;   // k contiguous groups along the ordering
  HistogramEstimate estimate;
};

// Sorts vertices by degree profile (lexicographic over 00, 01, 10, 11; ties
// by index), cuts the ordering into k contiguous groups of floor(n/k) with
// the remainder in the last group, then block-averages.
DegreeSortEstimate degree_sort_estimate(const Digraph& g, int k);

}  // namespace digraphon
