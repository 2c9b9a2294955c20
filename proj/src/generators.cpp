#include "coast/generators.hpp"

#include "coast/errors.hpp"

#include <random>
#include <unordered_set>

namespace coast::generators {

namespace {

Graph unit_graph(Index n, const std::vector<std::pair<Index, Index>>& pairs) {
  std::vector<Edge> edges;
  edges.reserve(pairs.size());
  for (auto [u, v] : pairs) edges.push_back({u, v, 1.0, 1.0});
  return Graph(n, std::move(edges));
}

}  // namespace

Graph path(Index n) {
  std::vector<std::pair<Index, Index>> pairs;
  for (Index i = 0; i + 1 < n; ++i) pairs.emplace_back(i, i + 1);
  return unit_graph(n, pairs);
}

Graph cycle(Index n) {
  if (n < 3) throw InputError("cycle needs at least 3 vertices");
  std::vector<std::pair<Index, Index>> pairs;
  for (Index i = 0; i < n; ++i) pairs.emplace_back(i, (i + 1) % n);
  return unit_graph(n, pairs);
}

Graph star(Index leaves) {
  std::vector<std::pair<Index, Index>> pairs;
  for (Index i = 1; i <= leaves; ++i) pairs.emplace_back(0, i);
  return unit_graph(leaves + 1, pairs);
}

Graph complete(Index n) {
  std::vector<std::pair<Index, Index>> pairs;
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  return unit_graph(n, pairs);
}

Graph grid(Index rows, Index cols) {
  std::vector<std::pair<Index, Index>> pairs;
  for (Index r = 0; r < rows; ++r) {
    for (Index c = 0; c < cols; ++c) {
      const Index v = r * cols + c;
      if (c + 1 < cols) pairs.emplace_back(v, v + 1);
      if (r + 1 < rows) pairs.emplace_back(v, v + cols);
    }
  }
  return unit_graph(rows * cols, pairs);
}

Graph binary_tree(int levels) {
  const Index n = (Index{1} << levels) - 1;
  std::vector<std::pair<Index, Index>> pairs;
  for (Index v = 1; v < n; ++v) pairs.emplace_back((v - 1) / 2, v);
  return unit_graph(n, pairs);
}

Graph random_connected(Index n, Index extra_edges, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::pair<Index, Index>> pairs;
  std::unordered_set<std::uint64_t> used;
  auto key = [](Index u, Index v) {
    if (u > v) std::swap(u, v);
    return (static_cast<std::uint64_t>(u) << 32) | static_cast<std::uint64_t>(v);
  };
  for (Index v = 1; v < n; ++v) {
    const Index parent = static_cast<Index>(rng() % static_cast<std::uint64_t>(v));
    pairs.emplace_back(parent, v);
    used.insert(key(parent, v));
  }
  const Index max_extra = n * (n - 1) / 2 - (n - 1);
  if (extra_edges > max_extra) throw InputError("too many extra edges requested");
  while (extra_edges > 0) {
    const Index u = static_cast<Index>(rng() % static_cast<std::uint64_t>(n));
    const Index v = static_cast<Index>(rng() % static_cast<std::uint64_t>(n));
    if (u == v || !used.insert(key(u, v)).second) continue;
    pairs.emplace_back(std::min(u, v), std::max(u, v));
    --extra_edges;
  }
  return unit_graph(n, pairs);
}

}  // namespace coast::generators
