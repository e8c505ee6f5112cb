#pragma once

namespace digraphon {

// Kernel selection for the O(n^2) pair loops. Serial and parallel variants
// produce bit-identical results (the draw for each pair is read from a fixed
// stream position), so kAuto may pick either freely.
enum class Exec { kAuto, kSerial, kParallel };

// Pair loops below this vertex count stay serial under kAuto.
inline constexpr int kParallelThreshold = 192;

bool parallel_enabled();
bool use_parallel(Exec mode, int n);

}  // namespace digraphon
