#pragma once

#include "coast/graph.hpp"
#include "coast/layout.hpp"

#include <Eigen/Core>

#include <cstdint>
#include <vector>

namespace coast {

struct PivotSet {
  std::vector<Index> pivots;
  /// |pivots| x n shortest-path distances.
  Eigen::MatrixXd dist;
};

/// Max-min pivots: the first is seed % n, each next one maximizes the
/// distance to the chosen set (ties to the smallest id).
PivotSet choose_pivots(const Graph& g, Index num_pivots, std::uint64_t seed);

struct PivotMdsOptions {
  /// 0 selects min(50, n).
  Index num_pivots = 0;
  Index dim = 2;
  std::uint64_t seed = 0;
};

/// Strain-model approximation from pivot distances. The n x h double-centered
/// matrix C is factored through the h x h matrix C^T C; coordinates are the
/// leading left singular vectors times sqrt(sigma), which is classical MDS
/// when every vertex is a pivot. The result is scaled so that edge lengths
/// best match their targets in the weighted least-squares sense.
Layout pivot_mds(const Graph& g, const PivotMdsOptions& options = {});

struct MajorizationResult {
  Layout layout;
  /// Stress after every sweep; entry 0 is the initial stress.
  std::vector<double> history;
  Index sweeps = 0;
  bool converged = false;
};

struct SparseStressOptions {
  Index max_sweeps = 200;
  /// Stop when the relative drop in edge stress is at most this.
  double tol = 1e-4;
};

/// Stress majorization over the edge terms only (w = 1/d^2), Gauss-Seidel
/// vertex updates.
MajorizationResult sparse_stress_majorization(const Graph& g, const Layout& init,
                                              const SparseStressOptions& options = {});

/// Sum over edges of (|x_u - x_v| - d)^2 / d^2.
double edge_stress(const Graph& g, const Eigen::MatrixXd& positions);

struct FullStressOptions {
  Index max_sweeps = 1000;
  double tol = 1e-6;
  Index max_vertices = 20000;
};

/// Stress majorization over all vertex pairs with shortest-path targets,
/// Gauss-Seidel vertex updates. Throws LimitError above max_vertices.
MajorizationResult full_stress_majorization(const Graph& g, const Layout& init,
                                            const FullStressOptions& options = {});

}  // namespace coast
