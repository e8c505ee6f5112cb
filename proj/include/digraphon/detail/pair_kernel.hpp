#pragma once

#include <cstdint>

#include "digraphon/digraphon.hpp"
#include "digraphon/exec.hpp"
#include "digraphon/rng.hpp"

namespace digraphon::detail {

// Flat index of the unordered pair (i, j), i < j, in row-major order.
constexpr std::uint64_t pair_index(int i, int j, int n) {
  return static_cast<std::uint64_t>(i) * (2ULL * n - i - 1) / 2 + (j - i - 1);
}

// Draws one joint edge type per unordered pair {i, j}, i < j, and writes both
// directed entries of `out`. The draw for pair (i, j) is output number
// first_pos + pair_index(i, j, n) of the seed's stream, which makes the
// serial and the OpenMP row-parallel traversal bit-identical.
//
// CellFn: (i, j) -> const Weights4& with the type probabilities ordered
// 00, 01, 10, 11.
template <class CellFn>
void sample_pair_types_serial(int n, std::uint64_t seed, std::uint64_t first_pos,
                              CellFn&& cell, Digraph& out) {
  Rng rng = Rng::at(seed, first_pos);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      int t = rng.categorical4(cell(i, j));
      out(i, j) = static_cast<std::uint8_t>(t >> 1);
      out(j, i) = static_cast<std::uint8_t>(t & 1);
    }
  }
}

template <class CellFn>
void sample_pair_types_parallel(int n, std::uint64_t seed, std::uint64_t first_pos,
                                CellFn&& cell, Digraph& out) {
#pragma omp parallel for schedule(dynamic, 16)
  for (int i = 0; i < n; ++i) {
    Rng rng = Rng::at(seed, first_pos + pair_index(i, i + 1, n));
    for (int j = i + 1; j < n; ++j) {
      int t = rng.categorical4(cell(i, j));
      out(i, j) = static_cast<std::uint8_t>(t >> 1);
      out(j, i) = static_cast<std::uint8_t>(t & 1);
    }
  }
}

template <class CellFn>
void sample_pair_types(int n, std::uint64_t seed, std::uint64_t first_pos, CellFn&& cell,
                       Digraph& out, Exec mode) {
  if (use_parallel(mode, n))
    sample_pair_types_parallel(n, seed, first_pos, cell, out);
  else
    sample_pair_types_serial(n, seed, first_pos, cell, out);
}

}  // namespace digraphon::detail
