#pragma once

#include "coast/generators.hpp"
#include "coast/graph.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <random>
#include <string>

namespace testing {

inline std::filesystem::path data(const std::string& name) { return std::filesystem::path(COAST_TEST_DATA) / name; }
inline std::filesystem::path golden(const std::string& name) { return std::filesystem::path(COAST_GOLDEN) / name; }

/// Random connected graph; with `integer_lengths` each edge gets a length in
/// {1, 2, 3} and weight 1/d^2, otherwise unit lengths.
inline coast::Graph random_graph(coast::Index n, coast::Index extra, std::uint64_t seed, bool integer_lengths = false) {
  coast::Graph g = coast::generators::random_connected(n, extra, seed);
  if (!integer_lengths) return g;
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  std::uniform_int_distribution<int> len(1, 3);
  auto edges = g.edges();
  for (auto& e : edges) {
    e.length = len(rng);
    e.weight = 1.0 / (e.length * e.length);
  }
  return coast::Graph(n, std::move(edges));
}

/// Fresh empty directory under the system temp dir.
inline std::filesystem::path scratch_dir(const std::string& tag) {
  auto dir = std::filesystem::temp_directory_path() / ("coast_test_" + tag);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

inline std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Contents of a frozen fixture. With COAST_UPDATE_GOLDEN set the fixture is
/// rewritten from `actual` first.
inline std::string golden_text(const std::string& name, const std::string& actual) {
  if (std::getenv("COAST_UPDATE_GOLDEN")) std::ofstream(golden(name), std::ios::binary) << actual;
  return slurp(golden(name));
}

}  // namespace testing
