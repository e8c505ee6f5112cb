#pragma once

#include <cstdint>

#include "digraphon/digraphon.hpp"
#include "digraphon/exec.hpp"

namespace digraphon {

// Draws G(n, d): n latent uniforms, one categorical joint-type draw per
// unordered pair, and deterministic self-loops from the class indicator.
// Stream layout: outputs 0..n-1 are the latents, output n + t is the draw for
// the t-th pair in row-major (i, j), i < j, order.
LatentSample sample_digraph(const StepDigraphon& d, int n, std::uint64_t seed,
                            Exec mode = Exec::kAuto);

}  // namespace digraphon
