#pragma once

#include "coast/graph.hpp"

#include <cstdint>

/// Deterministic unit-length graph families used by fixtures, tests and the
/// scalability benchmark.
namespace coast::generators {

Graph path(Index n);
Graph cycle(Index n);
Graph star(Index leaves);
Graph complete(Index n);
/// rows x cols lattice, vertex id = r * cols + c.
Graph grid(Index rows, Index cols);
/// Complete binary tree with 2^levels - 1 vertices, children of v at 2v+1, 2v+2.
Graph binary_tree(int levels);
/// Random recursive spanning tree plus `extra_edges` distinct random chords.
/// Always connected.
Graph random_connected(Index n, Index extra_edges, std::uint64_t seed);

}  // namespace coast::generators
