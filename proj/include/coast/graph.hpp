#pragma once

#include <Eigen/Core>

#include <optional>
#include <span>
#include <vector>

namespace coast {

using Index = Eigen::Index;

/// Undirected edge with target length and stress weight. Stored with u < v.
struct Edge {
  Index u = 0;
  Index v = 0;
  double length = 1.0;
  double weight = 1.0;
};

/// Edge as read from input, before defaults and weights are applied.
struct RawEdge {
  Index u = 0;
  Index v = 0;
  std::optional<double> length;
  std::optional<double> weight;
};

enum class WeightRule { inverse_square, unit, explicit_weight };

struct BuildOptions {
  double default_length = 1.0;
  WeightRule weight_rule = WeightRule::inverse_square;
  /// Vertex count; inferred as max index + 1 when empty.
  std::optional<Index> num_vertices;
};

/// Immutable simple undirected graph with per-edge length and weight.
///
/// Invariants: no self-loops, at most one edge per unordered pair, positive
/// lengths and weights, adjacency symmetric with the edge list.
class Graph {
 public:
  struct Neighbor {
    Index vertex;
    Index edge;
  };

  Graph() = default;
  /// Validates the invariants and builds the adjacency; throws InputError.
  Graph(Index num_vertices, std::vector<Edge> edges);

  Index num_vertices() const noexcept { return n_; }
  Index num_edges() const noexcept { return static_cast<Index>(edges_.size()); }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  const Edge& edge(Index e) const { return edges_[static_cast<std::size_t>(e)]; }

  std::span<const Neighbor> neighbors(Index v) const {
    const auto begin = static_cast<std::size_t>(offsets_[static_cast<std::size_t>(v)]);
    const auto end = static_cast<std::size_t>(offsets_[static_cast<std::size_t>(v) + 1]);
    return {adjacency_.data() + begin, end - begin};
  }
  Index degree(Index v) const {
    return offsets_[static_cast<std::size_t>(v) + 1] - offsets_[static_cast<std::size_t>(v)];
  }

  /// True when every edge has the same length (BFS suffices for distances).
  bool has_uniform_lengths() const noexcept { return uniform_lengths_; }

 private:
  Index n_ = 0;
  std::vector<Edge> edges_;
  std::vector<Index> offsets_{0};
  std::vector<Neighbor> adjacency_;
  bool uniform_lengths_ = true;
};

/// Normalizes raw input: drops self-loops, merges duplicate pairs keeping the
/// first length, fills missing lengths and assigns weights per the rule.
Graph build_graph(std::span<const RawEdge> raw, const BuildOptions& options = {});

struct ComponentExtraction {
  Graph graph;
  std::vector<Index> new_to_old;
  /// -1 for vertices outside the kept component.
  std::vector<Index> old_to_new;
  Index dropped_vertices = 0;
};

/// Largest connected component, densely renumbered in increasing old id.
/// Ties go to the component with the smallest minimum vertex id.
ComponentExtraction largest_component(const Graph& g);

bool is_connected(const Graph& g);

struct DistanceField {
  Index source = 0;
  /// +infinity for unreachable vertices.
  std::vector<double> dist;
};

DistanceField shortest_paths_from(const Graph& g, Index source);

/// Dense all-pairs distances by repeated single-source searches.
/// Throws LimitError when the vertex count exceeds max_vertices.
Eigen::MatrixXd all_pairs_distances(const Graph& g, Index max_vertices);

/// Median of the target lengths; even counts average the middle two.
double median_edge_length(const Graph& g);

}  // namespace coast
