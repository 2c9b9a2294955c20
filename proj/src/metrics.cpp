#include "coast/metrics.hpp"

#include "coast/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <string>

namespace coast {

namespace {

void check(const Graph& g, const Eigen::MatrixXd& positions, Index max_vertices) {
  if (positions.rows() != g.num_vertices()) throw InputError("layout and graph vertex counts differ");
  if (g.num_vertices() > max_vertices)
    throw LimitError("all-pairs metric on " + std::to_string(g.num_vertices()) + " vertices exceeds the guard of " +
                     std::to_string(max_vertices));
}

// Calls f(i, j, d_ij, layout distance) for every pair i < j.
template <typename F>
void for_each_pair(const Graph& g, const Eigen::MatrixXd& positions, F&& f) {
  const Index n = g.num_vertices();
  const Eigen::MatrixXd xt = positions.transpose();
  for (Index i = 0; i < n; ++i) {
    const auto field = shortest_paths_from(g, i);
    for (Index j = i + 1; j < n; ++j) {
      const double d = field.dist[static_cast<std::size_t>(j)];
      if (!std::isfinite(d)) throw InputError("metrics need a connected graph");
      f(i, j, d, (xt.col(i) - xt.col(j)).norm());
    }
  }
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

double full_stress(const Graph& g, const Eigen::MatrixXd& positions, Index max_vertices) {
  check(g, positions, max_vertices);
  double s = 0.0;
  for_each_pair(g, positions, [&](Index, Index, double d, double delta) {
    const double r = delta - d;
    s += r * r / (d * d);
  });
  return s;
}

double optimal_scale(const Graph& g, const Eigen::MatrixXd& positions, Index max_vertices) {
  check(g, positions, max_vertices);
  double num = 0.0, den = 0.0;
  for_each_pair(g, positions, [&](Index, Index, double d, double delta) {
    num += delta / d;
    den += delta * delta / (d * d);
  });
  if (!(den > 0.0)) throw NumericalError("degenerate layout: all vertices coincide");
  return num / den;
}

double scaled_stress(const Graph& g, const Eigen::MatrixXd& positions, Index max_vertices) {
  return full_stress(g, optimal_scale(g, positions, max_vertices) * positions, max_vertices);
}

long ErrorChart::total_pairs() const {
  long total = 0;
  for (const auto& b : bins) total += b.count;
  return total;
}

double sorted_quantile(const std::vector<double>& sorted, double q) {
  if (sorted.empty()) throw InputError("quantile of an empty sample");
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

ErrorChart error_chart(const Graph& g, const Eigen::MatrixXd& positions, std::optional<double> bin_width,
                       Index max_vertices) {
  check(g, positions, max_vertices);
  if (g.num_vertices() < 2) throw InputError("error chart needs at least two vertices");
  const Eigen::MatrixXd scaled = optimal_scale(g, positions, max_vertices) * positions;

  std::vector<std::pair<double, double>> pairs;  // (d_ij, error)
  double max_dist = 0.0;
  for_each_pair(g, scaled, [&](Index, Index, double d, double delta) {
    pairs.emplace_back(d, delta - d);
    max_dist = std::max(max_dist, d);
  });

  ErrorChart chart;
  if (bin_width) {
    chart.bin_width = *bin_width;
  } else if (g.has_uniform_lengths()) {
    chart.bin_width = g.edge(0).length;
  } else {
    chart.bin_width = max_dist / 50.0;
  }
  if (!(chart.bin_width > 0.0)) throw InputError("bin width must be positive");

  std::vector<std::vector<double>> errors;
  for (const auto& [d, err] : pairs) {
    const auto b = static_cast<std::size_t>(std::floor(d / chart.bin_width + 0.5));
    if (b >= errors.size()) errors.resize(b + 1);
    errors[b].push_back(err);
  }

  for (std::size_t b = 0; b < errors.size(); ++b) {
    auto& e = errors[b];
    if (e.empty()) continue;
    std::sort(e.begin(), e.end());
    ErrorBin bin;
    bin.graph_distance = static_cast<double>(b) * chart.bin_width;
    bin.median = sorted_quantile(e, 0.5);
    bin.q25 = sorted_quantile(e, 0.25);
    bin.q75 = sorted_quantile(e, 0.75);
    bin.min = e.front();
    bin.max = e.back();
    bin.count = static_cast<long>(e.size());
    chart.bins.push_back(bin);
  }
  return chart;
}

std::vector<PrecisionPoint> precision_curve(const Graph& g, const Eigen::MatrixXd& positions,
                                            const std::vector<Index>& ks, Index max_vertices) {
  check(g, positions, max_vertices);
  const Index n = g.num_vertices();
  std::vector<Index> valid;
  for (Index k : ks) {
    if (k < 1) throw InputError("precision K must be positive");
    if (k < n) valid.push_back(k);
  }
  if (valid.empty()) return {};
  const Index kmax = *std::max_element(valid.begin(), valid.end());

  const Eigen::MatrixXd xt = positions.transpose();
  std::vector<double> sums(valid.size(), 0.0);
  std::vector<Index> order;
  std::vector<double> layout_dist(static_cast<std::size_t>(n));
  std::vector<double> graph_sorted;
  for (Index i = 0; i < n; ++i) {
    const auto field = shortest_paths_from(g, i);
    for (Index j = 0; j < n; ++j) layout_dist[static_cast<std::size_t>(j)] = (xt.col(i) - xt.col(j)).norm();

    order.clear();
    graph_sorted.clear();
    for (Index j = 0; j < n; ++j) {
      if (j == i) continue;
      order.push_back(j);
      graph_sorted.push_back(field.dist[static_cast<std::size_t>(j)]);
    }
    std::partial_sort(order.begin(), order.begin() + kmax, order.end(), [&](Index a, Index b) {
      const double da = layout_dist[static_cast<std::size_t>(a)];
      const double db = layout_dist[static_cast<std::size_t>(b)];
      return da < db || (da == db && a < b);
    });
    std::sort(graph_sorted.begin(), graph_sorted.end());

    for (std::size_t s = 0; s < valid.size(); ++s) {
      const Index k = valid[s];
      const double threshold = graph_sorted[static_cast<std::size_t>(k - 1)];
      Index hits = 0;
      for (Index r = 0; r < k; ++r)
        if (field.dist[static_cast<std::size_t>(order[static_cast<std::size_t>(r)])] <= threshold) ++hits;
      sums[s] += static_cast<double>(hits) / static_cast<double>(k);
    }
  }

  std::vector<PrecisionPoint> curve;
  for (std::size_t s = 0; s < valid.size(); ++s) curve.push_back({valid[s], sums[s] / static_cast<double>(n)});
  return curve;
}

double neighborhood_precision(const Graph& g, const Eigen::MatrixXd& positions, Index k, Index max_vertices) {
  if (k < 1 || k >= g.num_vertices()) throw InputError("precision K must be in [1, n-1]");
  return precision_curve(g, positions, {k}, max_vertices).front().precision;
}

void write_error_chart_csv(const ErrorChart& chart, std::ostream& out) {
  out << "bin,median,q25,q75,min,max,count\n";
  for (const auto& b : chart.bins)
    out << fmt(b.graph_distance) << ',' << fmt(b.median) << ',' << fmt(b.q25) << ',' << fmt(b.q75) << ','
        << fmt(b.min) << ',' << fmt(b.max) << ',' << b.count << '\n';
}

void write_precision_csv(const std::vector<PrecisionPoint>& curve, std::ostream& out) {
  out << "K,precision\n";
  for (const auto& p : curve) out << p.k << ',' << fmt(p.precision) << '\n';
}

}  // namespace coast
