#pragma once

#include "coast/baselines.hpp"
#include "coast/graph.hpp"
#include "coast/layout.hpp"
#include "coast/model.hpp"
#include "coast/solver.hpp"
#include "coast/spectral.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace coast {

enum class Algorithm { coast, pivotmds, pivotmds1, fsm };

/// "coast", "pivotmds", "pivotmds1" or "fsm"; throws InputError otherwise.
Algorithm parse_algorithm(const std::string& name);
std::string algorithm_name(Algorithm a);

/// Wall-clock seconds per named phase, in execution order.
struct Timings {
  std::vector<std::pair<std::string, double>> phases;

  double total() const;
  double get(const std::string& phase) const;
};

struct CoastOptions {
  ModelParams model;
  EigenOptions eigen;
  SolverConfig solver;
  /// Times t may be halved after an unbounded solve before giving up.
  int max_halvings = 20;
  /// Also write the conic reformulation here.
  std::optional<std::filesystem::path> sqlp_path;
};

struct CoastRun {
  Layout layout;
  GramSolution<double> solution;
  /// t actually used after any halving.
  double t = 0;
  Index k = 0;
  Timings timings;
};

/// COAST on a connected graph: eigenbasis, assembly, solve, recovery.
CoastRun run_coast(const Graph& g, const CoastOptions& options);

struct RunOptions {
  Algorithm algorithm = Algorithm::coast;
  Index dim = 2;
  std::uint64_t seed = 0;
  CoastOptions coast;
  PivotMdsOptions pivot;
  SparseStressOptions sparse;
  FullStressOptions full;
};

struct RunResult {
  /// Rows are the vertices of the largest component; ids are input ids.
  Layout layout;
  Index dropped_vertices = 0;
  Timings timings;
  /// Present for COAST runs.
  std::optional<CoastRun> coast;
};

/// Lays out the largest connected component of g with the chosen algorithm.
RunResult run_layout(const Graph& g, const RunOptions& options);

}  // namespace coast
