#include "digraphon/sampling.hpp"

#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "digraphon/detail/pair_kernel.hpp"
#include "digraphon/rng.hpp"

namespace digraphon {

bool parallel_enabled() {
#ifdef _OPENMP
  return true;
#else
  return false;
#endif
}

bool use_parallel(Exec mode, int n) {
  if (!parallel_enabled()) return false;
  switch (mode) {
    case Exec::kSerial: return false;
    case Exec::kParallel: return true;
    case Exec::kAuto: return n >= kParallelThreshold;
  }
  return false;
}

LatentSample sample_digraph(const StepDigraphon& d, int n, std::uint64_t seed, Exec mode) {
  if (n < 0) throw std::invalid_argument("sample_digraph: need n >= 0");
  LatentSample s;
  s.u.resize(n);
  s.graph = Digraph(n);

  const bool par = use_parallel(mode, n);
  if (par) {
#pragma omp parallel for schedule(static)
    for (int i = 0; i < n; ++i) s.u[i] = Rng::at(seed, i).next_double();
  } else {
    Rng rng(seed);
    for (int i = 0; i < n; ++i) s.u[i] = rng.next_double();
  }

  std::vector<int> cls(n);
  for (int i = 0; i < n; ++i) cls[i] = d.class_of(s.u[i]);

  auto cell = [&d, &cls](int i, int j) -> const Weights4& { return d.cell(cls[i], cls[j]); };
  detail::sample_pair_types(n, seed, static_cast<std::uint64_t>(n), cell, s.graph,
                            par ? Exec::kParallel : Exec::kSerial);

  for (int i = 0; i < n; ++i)
    s.graph(i, i) = static_cast<std::uint8_t>(d.selfloop[cls[i]]);
  return s;
}

}  // namespace digraphon
