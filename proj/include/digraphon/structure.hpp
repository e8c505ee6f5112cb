#pragma once

#include <vector>

#include "digraphon/digraphon.hpp"

namespace digraphon {

// Symmetric adjacency with a zero diagonal.
bool is_undirected(const Digraph& g);

// Zero diagonal and exactly one directed edge per unordered pair.
bool is_tournament(const Digraph& g);

// No directed cycle; a self-loop counts as a cycle. Kahn-style elimination.
bool is_dag(const Digraph& g);

// adj[i][j] and adj[j][k] imply adj[i][k] for all i, j, k.
bool is_transitively_closed(const Digraph& g);

// Minimal edge superset closed under composition (reachability by nonempty
// paths); idempotent.
Digraph transitive_closure(const Digraph& g);

Digraph strip_loops(const Digraph& g);

// adj'[a][b] = adj[perm[a]][perm[b]]; perm maps new index -> old vertex.
Digraph permute_vertices(const Digraph& g, const std::vector<int>& perm);

// Permutation of [n] listing vertices by ascending u, ties by index.
std::vector<int> ascending_latent_order(const std::vector<double>& u);

// Adjacency conjugated by the ascending-latent permutation.
Digraph resort_by_latents(const LatentSample& s);

}  // namespace digraphon
