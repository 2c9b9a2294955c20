#pragma once

#include "coast/graph.hpp"
#include "coast/layout.hpp"

#include <Eigen/Core>

#include <optional>
#include <ostream>
#include <vector>

namespace coast {

/// Default size guard for all-pairs metrics.
inline constexpr Index kMetricGuard = 10000;

/// Sum over pairs i < j of (|x_i - x_j| - d_ij)^2 / d_ij^2 with shortest-path
/// d_ij. Pairs are streamed one source at a time.
double full_stress(const Graph& g, const Eigen::MatrixXd& positions, Index max_vertices = kMetricGuard);

/// Uniform factor s minimizing full_stress(s P).
double optimal_scale(const Graph& g, const Eigen::MatrixXd& positions, Index max_vertices = kMetricGuard);

/// full_stress after optimal rescaling.
double scaled_stress(const Graph& g, const Eigen::MatrixXd& positions, Index max_vertices = kMetricGuard);

struct ErrorBin {
  double graph_distance = 0;  ///< bin center
  double median = 0;
  double q25 = 0;
  double q75 = 0;
  double min = 0;
  double max = 0;
  long count = 0;
};

struct ErrorChart {
  double bin_width = 1;
  /// Non-empty bins in increasing distance.
  std::vector<ErrorBin> bins;

  long total_pairs() const;
};

/// Linear-interpolation quantile of sorted data (q in [0, 1]).
double sorted_quantile(const std::vector<double>& sorted, double q);

/// Layout error |x_i - x_j| - d_ij after optimal rescaling, binned by d_ij.
/// Bin b collects distances in [(b - 1/2) w, (b + 1/2) w). Default width is the
/// common edge length for uniform-length graphs, else (max distance) / 50.
ErrorChart error_chart(const Graph& g, const Eigen::MatrixXd& positions, std::optional<double> bin_width = {},
                       Index max_vertices = kMetricGuard);

/// Mean over vertices of the fraction of the K layout-nearest vertices whose
/// graph distance is at most that of the K-th graph-nearest vertex. Ties in
/// both orderings go to the smaller id; the vertex itself is excluded.
double neighborhood_precision(const Graph& g, const Eigen::MatrixXd& positions, Index k,
                              Index max_vertices = kMetricGuard);

struct PrecisionPoint {
  Index k = 0;
  double precision = 0;
};

/// Precision for several K with one pass over the sources. K >= n are dropped.
std::vector<PrecisionPoint> precision_curve(const Graph& g, const Eigen::MatrixXd& positions,
                                            const std::vector<Index>& ks, Index max_vertices = kMetricGuard);

inline const std::vector<Index> kDefaultPrecisionK{1, 2, 5, 10, 20, 50};

void write_error_chart_csv(const ErrorChart& chart, std::ostream& out);
void write_precision_csv(const std::vector<PrecisionPoint>& curve, std::ostream& out);

}  // namespace coast
