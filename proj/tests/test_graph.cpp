#include "coast/errors.hpp"
#include "coast/generators.hpp"
#include "coast/graph.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>
#include <vector>

using namespace coast;

TEST_SUITE("graph") {

TEST_CASE("build_graph defaults and weights") {
  std::vector<RawEdge> raw{{0, 1, {}, {}}};
  Graph g = build_graph(raw);
  REQUIRE(g.num_edges() == 1);
  CHECK(g.edge(0).length == 1.0);
  CHECK(g.edge(0).weight == 1.0);

  std::vector<RawEdge> two{{0, 1, 2.0, {}}};
  CHECK(build_graph(two).edge(0).weight == 0.25);
}

TEST_CASE("build_graph drops self-loops and duplicates") {
  std::vector<RawEdge> raw{{0, 1, 1.0, {}}, {1, 0, 1.0, {}}, {0, 0, 1.0, {}}};
  Graph g = build_graph(raw);
  REQUIRE(g.num_edges() == 1);
  CHECK(g.edge(0).u == 0);
  CHECK(g.edge(0).v == 1);
}

TEST_CASE("duplicate keeps the first length") {
  std::vector<RawEdge> raw{{2, 1, 3.0, {}}, {1, 2, 5.0, {}}};
  Graph g = build_graph(raw);
  REQUIRE(g.num_edges() == 1);
  CHECK(g.edge(0).length == 3.0);
  CHECK(g.edge(0).u == 1);
}

TEST_CASE("build_graph rejects bad input") {
  CHECK_THROWS_AS(build_graph(std::vector<RawEdge>{}), InputError);
  CHECK_THROWS_AS(build_graph(std::vector<RawEdge>{{0, 1, 0.0, {}}}), InputError);
  CHECK_THROWS_AS(build_graph(std::vector<RawEdge>{{0, 1, -2.0, {}}}), InputError);
  CHECK_THROWS_AS(build_graph(std::vector<RawEdge>{{0, 0, 1.0, {}}}), InputError);
  BuildOptions opts;
  opts.weight_rule = WeightRule::explicit_weight;
  CHECK_THROWS_AS(build_graph(std::vector<RawEdge>{{0, 1, 1.0, {}}}, opts), InputError);
}

TEST_CASE("weight rules") {
  std::vector<RawEdge> raw{{0, 1, 4.0, 7.0}};
  BuildOptions opts;
  opts.weight_rule = WeightRule::unit;
  CHECK(build_graph(raw, opts).edge(0).weight == 1.0);
  opts.weight_rule = WeightRule::explicit_weight;
  CHECK(build_graph(raw, opts).edge(0).weight == 7.0);
}

TEST_CASE("Graph constructor invariants") {
  CHECK_THROWS_AS(Graph(2, {{0, 0, 1, 1}}), InputError);
  CHECK_THROWS_AS(Graph(2, {{0, 2, 1, 1}}), InputError);
  CHECK_THROWS_AS(Graph(2, {{0, 1, 1, 1}, {0, 1, 1, 1}}), InputError);
  CHECK_THROWS_AS(Graph(2, {{0, 1, 0, 1}}), InputError);
  CHECK_THROWS_AS(Graph(2, {{0, 1, 1, -1}}), InputError);
  Graph g = generators::grid(3, 4);
  for (Index v = 0; v < g.num_vertices(); ++v)
    for (const auto& nb : g.neighbors(v)) {
      const auto& e = g.edge(nb.edge);
      CHECK(((e.u == v && e.v == nb.vertex) || (e.v == v && e.u == nb.vertex)));
    }
}

TEST_CASE("build_graph is idempotent") {
  Graph g = testing::random_graph(30, 20, 5, true);
  std::vector<RawEdge> raw;
  for (const auto& e : g.edges()) raw.push_back({e.u, e.v, e.length, {}});
  Graph h = build_graph(raw);
  REQUIRE(h.num_edges() == g.num_edges());
  for (Index e = 0; e < g.num_edges(); ++e) {
    CHECK(h.edge(e).u == g.edge(e).u);
    CHECK(h.edge(e).v == g.edge(e).v);
    CHECK(h.edge(e).length == g.edge(e).length);
    CHECK(h.edge(e).weight == g.edge(e).weight);
  }
}

TEST_CASE("largest component") {
  SUBCASE("connected C4 is unchanged") {
    auto comp = largest_component(generators::cycle(4));
    CHECK(comp.graph.num_vertices() == 4);
    CHECK(comp.graph.num_edges() == 4);
    CHECK(comp.dropped_vertices == 0);
    for (Index v = 0; v < 4; ++v) CHECK(comp.new_to_old[static_cast<std::size_t>(v)] == v);
  }
  SUBCASE("two triangles and an isolated vertex") {
    Graph g(7, {{1, 2, 1, 1}, {2, 3, 1, 1}, {1, 3, 1, 1}, {0, 4, 1, 1}, {4, 5, 1, 1}, {0, 5, 1, 1}});
    auto comp = largest_component(g);
    CHECK(comp.graph.num_vertices() == 3);
    CHECK(comp.new_to_old == std::vector<Index>{0, 4, 5});
    CHECK(comp.old_to_new[1] == -1);
    CHECK(comp.old_to_new[6] == -1);
    CHECK(comp.dropped_vertices == 4);
  }
  SUBCASE("P5 plus a separate edge") {
    Graph g(7, {{0, 1, 1, 1}, {1, 2, 1, 1}, {2, 3, 1, 1}, {3, 4, 1, 1}, {5, 6, 1, 1}});
    auto comp = largest_component(g);
    CHECK(comp.graph.num_vertices() == 5);
    CHECK(comp.graph.num_edges() == 4);
    CHECK(is_connected(comp.graph));
  }
  SUBCASE("random forests give connected output") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      std::mt19937_64 rng(seed);
      std::uniform_int_distribution<Index> pick(0, 39);
      std::vector<RawEdge> raw;
      for (int i = 0; i < 30; ++i) raw.push_back({pick(rng), pick(rng), {}, {}});
      BuildOptions opts;
      opts.num_vertices = 40;
      Graph g = build_graph(raw, opts);
      CHECK(is_connected(largest_component(g).graph));
    }
  }
}

TEST_CASE("shortest paths") {
  SUBCASE("P3") {
    auto f = shortest_paths_from(generators::path(3), 0);
    CHECK(f.dist == std::vector<double>{0, 1, 2});
  }
  SUBCASE("shortcut through a middle vertex") {
    Graph g(3, {{0, 1, 1, 1}, {1, 2, 1, 1}, {0, 2, 3, 1.0 / 9}});
    CHECK(shortest_paths_from(g, 0).dist[2] == 2.0);
  }
  SUBCASE("star from its center") {
    CHECK(shortest_paths_from(generators::star(3), 0).dist == std::vector<double>{0, 1, 1, 1});
  }
  SUBCASE("unreachable is infinite") {
    Graph g(3, {{0, 1, 1, 1}});
    CHECK(std::isinf(shortest_paths_from(g, 0).dist[2]));
  }
  SUBCASE("bad source") { CHECK_THROWS_AS(shortest_paths_from(generators::path(3), 3), InputError); }
  SUBCASE("agrees with Bellman-Ford") {
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
      const Index n = 5 + static_cast<Index>(seed % 45);
      Graph g = testing::random_graph(n, n / 2, seed, seed % 2 == 0);
      for (Index s = 0; s < n; s += 7) {
        auto ours = shortest_paths_from(g, s);
        auto ref = oracle::bellman_ford(g, s);
        CHECK(ours.dist == ref);
        for (const auto& e : g.edges()) {
          CHECK(ours.dist[static_cast<std::size_t>(e.v)] <= ours.dist[static_cast<std::size_t>(e.u)] + e.length);
          CHECK(ours.dist[static_cast<std::size_t>(e.u)] <= ours.dist[static_cast<std::size_t>(e.v)] + e.length);
        }
      }
    }
  }
}

TEST_CASE("all pairs guard") {
  Graph g = generators::path(10);
  CHECK_THROWS_AS(all_pairs_distances(g, 9), LimitError);
  auto d = all_pairs_distances(g, 10);
  CHECK(d(0, 9) == 9.0);
  CHECK(d(9, 0) == 9.0);
}

TEST_CASE("median edge length") {
  CHECK(median_edge_length(generators::cycle(3)) == 1.0);
  Graph four(5, {{0, 1, 1, 1}, {1, 2, 2, 1}, {2, 3, 3, 1}, {3, 4, 10, 1}});
  CHECK(median_edge_length(four) == 2.5);
  Graph one(2, {{0, 1, 2, 1}});
  CHECK(median_edge_length(one) == 2.0);
}

TEST_CASE("generators") {
  CHECK(generators::binary_tree(10).num_vertices() == 1023);
  CHECK(generators::binary_tree(10).num_edges() == 1022);
  CHECK(generators::grid(32, 32).num_edges() == 2 * 32 * 31);
  Graph r = generators::random_connected(200, 100, 3);
  CHECK(r.num_edges() == 299);
  CHECK(is_connected(r));
  Graph again = generators::random_connected(200, 100, 3);
  for (Index e = 0; e < r.num_edges(); ++e) CHECK(r.edge(e).u == again.edge(e).u);
}

}
