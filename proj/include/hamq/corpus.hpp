#pragma once

#include <cstdint>
#include <vector>

#include "hamq/graph.hpp"

namespace hamq {

/// Canonical upper-triangle code of a graph with n <= 11: the maximum, over
/// orderings compatible with an iterated degree refinement, of the bit string
/// adj(o0,o1) adj(o0,o2) adj(o1,o2) adj(o0,o3) ... (column by column).
std::uint64_t canonical_code(const Graph &g);

/// Graph in the vertex order realizing canonical_code.
Graph canonical_form(const Graph &g);

/// One representative of every isomorphism class on n vertices (n <= 10),
/// each in canonical form, sorted by code. Built by vertex augmentation of
/// the (n-1)-vertex classes.
std::vector<Graph> all_graphs(int n);

/// The connected members of all_graphs(n).
std::vector<Graph> connected_graphs(int n);

} // namespace hamq
