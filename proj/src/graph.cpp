#include "coast/graph.hpp"

#include "coast/errors.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <queue>
#include <string>
#include <unordered_map>

namespace coast {

namespace {

std::uint64_t pair_key(Index u, Index v) {
  return (static_cast<std::uint64_t>(u) << 32) | static_cast<std::uint64_t>(v);
}

}  // namespace

Graph::Graph(Index num_vertices, std::vector<Edge> edges) : n_(num_vertices), edges_(std::move(edges)) {
  if (n_ < 0) throw InputError("negative vertex count");
  std::vector<Index> degree(static_cast<std::size_t>(n_), 0);
  std::unordered_map<std::uint64_t, Index> seen;
  seen.reserve(edges_.size());
  for (auto& e : edges_) {
    if (e.u < 0 || e.v < 0 || e.u >= n_ || e.v >= n_)
      throw InputError("edge endpoint out of range");
    if (e.u == e.v) throw InputError("self-loop on vertex " + std::to_string(e.u));
    if (!(e.length > 0.0) || !std::isfinite(e.length))
      throw InputError("edge length must be positive and finite");
    if (!(e.weight > 0.0) || !std::isfinite(e.weight))
      throw InputError("edge weight must be positive and finite");
    if (e.u > e.v) std::swap(e.u, e.v);
    if (!seen.emplace(pair_key(e.u, e.v), 0).second)
      throw InputError("duplicate edge " + std::to_string(e.u) + "-" + std::to_string(e.v));
    ++degree[static_cast<std::size_t>(e.u)];
    ++degree[static_cast<std::size_t>(e.v)];
  }

  offsets_.assign(static_cast<std::size_t>(n_) + 1, 0);
  for (Index v = 0; v < n_; ++v)
    offsets_[static_cast<std::size_t>(v) + 1] = offsets_[static_cast<std::size_t>(v)] + degree[static_cast<std::size_t>(v)];
  adjacency_.resize(static_cast<std::size_t>(offsets_.back()));
  std::vector<Index> fill(offsets_.begin(), offsets_.end() - 1);
  for (Index e = 0; e < num_edges(); ++e) {
    const auto& ed = edges_[static_cast<std::size_t>(e)];
    adjacency_[static_cast<std::size_t>(fill[static_cast<std::size_t>(ed.u)]++)] = {ed.v, e};
    adjacency_[static_cast<std::size_t>(fill[static_cast<std::size_t>(ed.v)]++)] = {ed.u, e};
  }

  uniform_lengths_ = std::all_of(edges_.begin(), edges_.end(),
                                 [&](const Edge& e) { return e.length == edges_.front().length; });
}

Graph build_graph(std::span<const RawEdge> raw, const BuildOptions& options) {
  if (raw.empty()) throw InputError("empty edge list");
  if (!(options.default_length > 0.0)) throw InputError("default length must be positive");

  Index n = options.num_vertices.value_or(0);
  if (!options.num_vertices) {
    for (const auto& r : raw) n = std::max({n, r.u + 1, r.v + 1});
  }

  std::vector<Edge> edges;
  edges.reserve(raw.size());
  std::unordered_map<std::uint64_t, Index> seen;
  seen.reserve(raw.size());
  for (const auto& r : raw) {
    if (r.u < 0 || r.v < 0 || r.u >= n || r.v >= n)
      throw InputError("vertex index out of range: " + std::to_string(r.u) + "-" + std::to_string(r.v));
    if (r.length && !(*r.length > 0.0))
      throw InputError("non-positive edge length " + std::to_string(*r.length));
    if (r.u == r.v) continue;
    const Index u = std::min(r.u, r.v);
    const Index v = std::max(r.u, r.v);
    if (!seen.emplace(pair_key(u, v), 0).second) continue;

    const double length = r.length.value_or(options.default_length);
    double weight = 1.0;
    switch (options.weight_rule) {
      case WeightRule::inverse_square:
        weight = 1.0 / (length * length);
        break;
      case WeightRule::unit:
        weight = 1.0;
        break;
      case WeightRule::explicit_weight:
        if (!r.weight) throw InputError("explicit weight rule but edge has no weight");
        weight = *r.weight;
        break;
    }
    edges.push_back({u, v, length, weight});
  }
  if (edges.empty()) throw InputError("edge list contains only self-loops");
  return Graph(n, std::move(edges));
}

ComponentExtraction largest_component(const Graph& g) {
  const Index n = g.num_vertices();
  std::vector<Index> label(static_cast<std::size_t>(n), -1);
  std::vector<Index> sizes;
  std::deque<Index> queue;
  // Components are discovered in order of their smallest vertex id.
  for (Index s = 0; s < n; ++s) {
    if (label[static_cast<std::size_t>(s)] >= 0) continue;
    const Index id = static_cast<Index>(sizes.size());
    Index size = 0;
    label[static_cast<std::size_t>(s)] = id;
    queue.push_back(s);
    while (!queue.empty()) {
      const Index v = queue.front();
      queue.pop_front();
      ++size;
      for (const auto& nb : g.neighbors(v)) {
        if (label[static_cast<std::size_t>(nb.vertex)] < 0) {
          label[static_cast<std::size_t>(nb.vertex)] = id;
          queue.push_back(nb.vertex);
        }
      }
    }
    sizes.push_back(size);
  }

  ComponentExtraction out;
  out.old_to_new.assign(static_cast<std::size_t>(n), -1);
  if (n == 0) return out;
  const Index best = std::max_element(sizes.begin(), sizes.end()) - sizes.begin();
  for (Index v = 0; v < n; ++v) {
    if (label[static_cast<std::size_t>(v)] == best) {
      out.old_to_new[static_cast<std::size_t>(v)] = static_cast<Index>(out.new_to_old.size());
      out.new_to_old.push_back(v);
    }
  }
  std::vector<Edge> edges;
  for (const auto& e : g.edges()) {
    if (label[static_cast<std::size_t>(e.u)] != best) continue;
    edges.push_back({out.old_to_new[static_cast<std::size_t>(e.u)],
                     out.old_to_new[static_cast<std::size_t>(e.v)], e.length, e.weight});
  }
  out.dropped_vertices = n - static_cast<Index>(out.new_to_old.size());
  out.graph = Graph(static_cast<Index>(out.new_to_old.size()), std::move(edges));
  return out;
}

bool is_connected(const Graph& g) {
  const Index n = g.num_vertices();
  if (n <= 1) return true;
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  std::vector<Index> stack{0};
  seen[0] = 1;
  Index count = 1;
  while (!stack.empty()) {
    const Index v = stack.back();
    stack.pop_back();
    for (const auto& nb : g.neighbors(v)) {
      if (!seen[static_cast<std::size_t>(nb.vertex)]) {
        seen[static_cast<std::size_t>(nb.vertex)] = 1;
        ++count;
        stack.push_back(nb.vertex);
      }
    }
  }
  return count == n;
}

DistanceField shortest_paths_from(const Graph& g, Index source) {
  const Index n = g.num_vertices();
  if (source < 0 || source >= n) throw InputError("source vertex out of range");
  constexpr double inf = std::numeric_limits<double>::infinity();
  DistanceField field{source, std::vector<double>(static_cast<std::size_t>(n), inf)};
  auto& dist = field.dist;
  dist[static_cast<std::size_t>(source)] = 0.0;

  if (g.has_uniform_lengths()) {
    const double step = g.num_edges() > 0 ? g.edge(0).length : 1.0;
    std::vector<Index> hops(static_cast<std::size_t>(n), -1);
    std::deque<Index> queue{source};
    hops[static_cast<std::size_t>(source)] = 0;
    while (!queue.empty()) {
      const Index v = queue.front();
      queue.pop_front();
      for (const auto& nb : g.neighbors(v)) {
        auto& h = hops[static_cast<std::size_t>(nb.vertex)];
        if (h < 0) {
          h = hops[static_cast<std::size_t>(v)] + 1;
          dist[static_cast<std::size_t>(nb.vertex)] = static_cast<double>(h) * step;
          queue.push_back(nb.vertex);
        }
      }
    }
    return field;
  }

  using Item = std::pair<double, Index>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  heap.emplace(0.0, source);
  while (!heap.empty()) {
    const auto [d, v] = heap.top();
    heap.pop();
    if (d > dist[static_cast<std::size_t>(v)]) continue;
    for (const auto& nb : g.neighbors(v)) {
      const double cand = d + g.edge(nb.edge).length;
      if (cand < dist[static_cast<std::size_t>(nb.vertex)]) {
        dist[static_cast<std::size_t>(nb.vertex)] = cand;
        heap.emplace(cand, nb.vertex);
      }
    }
  }
  return field;
}

Eigen::MatrixXd all_pairs_distances(const Graph& g, Index max_vertices) {
  const Index n = g.num_vertices();
  if (n > max_vertices)
    throw LimitError("all-pairs distances need " + std::to_string(n) + " vertices, guard is " +
                     std::to_string(max_vertices) + "; use PivotMDS or raise the guard");
  Eigen::MatrixXd d(n, n);
  for (Index s = 0; s < n; ++s) {
    const auto field = shortest_paths_from(g, s);
    d.col(s) = Eigen::Map<const Eigen::VectorXd>(field.dist.data(), n);
  }
  return d;
}

double median_edge_length(const Graph& g) {
  if (g.num_edges() == 0) throw InputError("median of an empty edge set");
  std::vector<double> lengths;
  lengths.reserve(g.edges().size());
  for (const auto& e : g.edges()) lengths.push_back(e.length);
  const std::size_t mid = lengths.size() / 2;
  std::nth_element(lengths.begin(), lengths.begin() + static_cast<std::ptrdiff_t>(mid), lengths.end());
  const double upper = lengths[mid];
  if (lengths.size() % 2 == 1) return upper;
  const double lower = *std::max_element(lengths.begin(), lengths.begin() + static_cast<std::ptrdiff_t>(mid));
  return 0.5 * (lower + upper);
}

}  // namespace coast
