#pragma once

// Brute-force reference implementations. Deliberately naive: nothing here
// calls into the library except for the Graph accessors.

#include "coast/graph.hpp"

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <set>
#include <utility>
#include <vector>

namespace oracle {

using coast::Graph;
using coast::Index;
using Eigen::MatrixXd;
using Eigen::VectorXd;

inline std::vector<double> bellman_ford(const Graph& g, Index source) {
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> d(static_cast<std::size_t>(g.num_vertices()), inf);
  d[static_cast<std::size_t>(source)] = 0;
  for (Index round = 0; round < g.num_vertices(); ++round) {
    bool changed = false;
    for (const auto& e : g.edges()) {
      auto& du = d[static_cast<std::size_t>(e.u)];
      auto& dv = d[static_cast<std::size_t>(e.v)];
      if (du + e.length < dv) dv = du + e.length, changed = true;
      if (dv + e.length < du) du = dv + e.length, changed = true;
    }
    if (!changed) break;
  }
  return d;
}

inline MatrixXd all_pairs(const Graph& g) {
  const Index n = g.num_vertices();
  MatrixXd d(n, n);
  for (Index s = 0; s < n; ++s) {
    const auto row = bellman_ford(g, s);
    for (Index v = 0; v < n; ++v) d(s, v) = row[static_cast<std::size_t>(v)];
  }
  return d;
}

inline MatrixXd dense_laplacian(const Graph& g) {
  const Index n = g.num_vertices();
  MatrixXd l = MatrixXd::Zero(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) {
      if (i == j) continue;
      for (const auto& e : g.edges())
        if ((e.u == i && e.v == j) || (e.u == j && e.v == i)) l(i, j) = -1;
    }
  for (Index i = 0; i < n; ++i) l(i, i) = -l.row(i).sum();
  return l;
}

struct SpectralGap {
  double value_error = 0;
  /// sin of the largest principal angle between each group of computed
  /// vectors and the dense eigenspace of that eigenvalue.
  double angle = 0;
};

/// Compares the k computed pairs against a dense eigendecomposition of the
/// Laplacian; eigenvalues within `group_tol` form one eigenspace.
inline SpectralGap compare_spectrum(const MatrixXd& laplacian, const VectorXd& values, const MatrixXd& vectors,
                                    double group_tol = 1e-8) {
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(laplacian);
  const VectorXd& all = es.eigenvalues();
  SpectralGap gap;
  const Index k = values.size();
  for (Index c = 0; c < k; ++c) gap.value_error = std::max(gap.value_error, std::abs(values(c) - all(c + 1)));
  for (Index start = 0; start < k;) {
    Index end = start + 1;
    while (end < k && std::abs(values(end) - values(start)) <= group_tol) ++end;
    std::vector<Index> cols;
    for (Index j = 1; j < all.size(); ++j)
      if (std::abs(all(j) - values(start)) <= group_tol) cols.push_back(j);
    MatrixXd u(laplacian.rows(), static_cast<Index>(cols.size()));
    for (std::size_t j = 0; j < cols.size(); ++j) u.col(static_cast<Index>(j)) = es.eigenvectors().col(cols[j]);
    const MatrixXd v = vectors.middleCols(start, end - start);
    const MatrixXd off = v - u * (u.transpose() * v);
    const double s = off.size() ? Eigen::JacobiSVD<MatrixXd>(off).singularValues()(0) : 0.0;
    gap.angle = std::max(gap.angle, cols.empty() ? 1.0 : s);
    start = end;
  }
  return gap;
}

inline bool has_edge(const Graph& g, Index i, Index j) {
  for (const auto& e : g.edges())
    if ((e.u == i && e.v == j) || (e.u == j && e.v == i)) return true;
  return false;
}

inline const coast::Edge* find_edge(const Graph& g, Index i, Index j) {
  for (const auto& e : g.edges())
    if ((e.u == i && e.v == j) || (e.u == j && e.v == i)) return &e;
  return nullptr;
}

/// Quartic objective by enumerating every unordered pair, P centered here.
inline double quartic_objective(const Graph& g, MatrixXd p, double t, double lambda) {
  const Index n = g.num_vertices();
  VectorXd mean = p.colwise().mean().transpose();
  for (Index i = 0; i < n; ++i) p.row(i) -= mean.transpose();
  double edge_part = 0, spread = 0;
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j) {
      const double len2 = (p.row(i) - p.row(j)).squaredNorm();
      if (const auto* e = find_edge(g, i, j)) {
        const double r = e->weight * len2 - e->weight * e->length * e->length;
        edge_part += r * r;
      } else {
        spread += len2;
      }
    }
  return edge_part - t * lambda * spread;
}

/// vec(E_ij)^T (Q (x) Q) with E_ij = (e_i - e_j)(e_i - e_j)^T.
inline VectorXd kron_edge_row(const MatrixXd& q, Index i, Index j) {
  const Index n = q.rows();
  MatrixXd e = MatrixXd::Zero(n, n);
  e(i, i) = e(j, j) = 1;
  e(i, j) = e(j, i) = -1;
  const Eigen::Map<const VectorXd> ve(e.data(), n * n);
  const MatrixXd qq = Eigen::kroneckerProduct(q, q).eval();
  return qq.transpose() * ve;
}

inline double stress(const Graph& g, const MatrixXd& p) {
  const MatrixXd d = all_pairs(g);
  double s = 0;
  for (Index i = 0; i < p.rows(); ++i)
    for (Index j = i + 1; j < p.rows(); ++j) {
      const double diff = (p.row(i) - p.row(j)).norm() - d(i, j);
      s += diff * diff / (d(i, j) * d(i, j));
    }
  return s;
}

inline double best_scale(const Graph& g, const MatrixXd& p) {
  const MatrixXd d = all_pairs(g);
  double num = 0, den = 0;
  for (Index i = 0; i < p.rows(); ++i)
    for (Index j = i + 1; j < p.rows(); ++j) {
      const double delta = (p.row(i) - p.row(j)).norm();
      num += delta / d(i, j);
      den += delta * delta / (d(i, j) * d(i, j));
    }
  return num / den;
}

/// Linear interpolation between closest ranks, computed from an unsorted copy.
inline double quantile(std::vector<double> xs, double q) {
  std::sort(xs.begin(), xs.end());
  const double pos = q * static_cast<double>(xs.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, xs.size() - 1);
  return xs[lo] + (pos - static_cast<double>(lo)) * (xs[hi] - xs[lo]);
}

struct Bin {
  long index;
  double median, q25, q75, min, max;
  long count;
};

inline std::vector<Bin> error_bins(const Graph& g, const MatrixXd& p, double width) {
  const MatrixXd d = all_pairs(g);
  const double s = best_scale(g, p);
  std::vector<std::pair<long, double>> errs;
  for (Index i = 0; i < p.rows(); ++i)
    for (Index j = i + 1; j < p.rows(); ++j)
      errs.push_back({static_cast<long>(std::floor(d(i, j) / width + 0.5)), s * (p.row(i) - p.row(j)).norm() - d(i, j)});
  std::set<long> keys;
  for (const auto& e : errs) keys.insert(e.first);
  std::vector<Bin> out;
  for (long key : keys) {
    std::vector<double> xs;
    for (const auto& e : errs)
      if (e.first == key) xs.push_back(e.second);
    out.push_back({key, quantile(xs, 0.5), quantile(xs, 0.25), quantile(xs, 0.75),
                   *std::min_element(xs.begin(), xs.end()), *std::max_element(xs.begin(), xs.end()),
                   static_cast<long>(xs.size())});
  }
  return out;
}

inline double precision(const Graph& g, const MatrixXd& p, Index k) {
  const Index n = g.num_vertices();
  const MatrixXd d = all_pairs(g);
  double total = 0;
  for (Index i = 0; i < n; ++i) {
    std::vector<std::pair<double, Index>> by_graph, by_layout;
    for (Index j = 0; j < n; ++j) {
      if (j == i) continue;
      by_graph.push_back({d(i, j), j});
      by_layout.push_back({(p.row(i) - p.row(j)).norm(), j});
    }
    std::sort(by_graph.begin(), by_graph.end());
    std::sort(by_layout.begin(), by_layout.end());
    const double threshold = by_graph[static_cast<std::size_t>(k - 1)].first;
    Index hits = 0;
    for (Index r = 0; r < k; ++r)
      if (d(i, by_layout[static_cast<std::size_t>(r)].second) <= threshold) ++hits;
    total += static_cast<double>(hits) / static_cast<double>(k);
  }
  return total / static_cast<double>(n);
}

/// Quadratic T(Y) = vec(Y)^T A vec(Y) + b^T vec(Y) + c for 2x2 Y.
struct Quadratic2 {
  MatrixXd a;
  VectorXd b;
  double c;
  double operator()(const Eigen::Matrix2d& y) const {
    const Eigen::Map<const VectorXd> v(y.data(), 4);
    return v.dot(a * v) + b.dot(v) + c;
  }
};

/// Minimum over 2x2 PSD matrices: the unconstrained stationary point if it is
/// PSD, else the best rank-one Y = r u u^T found by scanning the angle of u on
/// a fine grid and polishing with golden-section search (r is closed form).
inline double min_psd2(const Quadratic2& f) {
  // Symmetric coordinates (y11, y12, y22).
  Eigen::Matrix<double, 4, 3> lift;
  lift << 1, 0, 0, 0, 1, 0, 0, 1, 0, 0, 0, 1;
  const Eigen::Matrix3d h = lift.transpose() * f.a * lift;
  const Eigen::Vector3d g = lift.transpose() * f.b;
  double best = f.c;
  Eigen::FullPivLU<Eigen::Matrix3d> lu(h);
  if (lu.isInvertible()) {
    const Eigen::Vector3d s = lu.solve(-0.5 * g);
    Eigen::Matrix2d y;
    y << s(0), s(1), s(1), s(2);
    if (s(0) >= 0 && s(2) >= 0 && s(0) * s(2) - s(1) * s(1) >= 0) best = std::min(best, f(y));
  }
  auto ray = [&](double theta) {
    const Eigen::Vector2d u(std::cos(theta), std::sin(theta));
    const Eigen::Matrix2d uu = u * u.transpose();
    const Eigen::Map<const VectorXd> v(uu.data(), 4);
    const double quad = v.dot(f.a * v), lin = f.b.dot(v);
    if (quad <= 0) return lin < 0 ? -std::numeric_limits<double>::infinity() : f.c;
    const double r = std::max(0.0, -lin / (2 * quad));
    return quad * r * r + lin * r + f.c;
  };
  const int steps = 20000;
  const double pi = std::acos(-1.0);
  int arg = 0;
  double coarse = ray(0);
  for (int s = 1; s < steps; ++s) {
    const double v = ray(pi * s / steps);
    if (v < coarse) coarse = v, arg = s;
  }
  double lo = pi * (arg - 1) / steps, hi = pi * (arg + 1) / steps;
  const double phi = 0.5 * (std::sqrt(5.0) - 1);
  for (int it = 0; it < 200; ++it) {
    const double m1 = hi - phi * (hi - lo), m2 = lo + phi * (hi - lo);
    if (ray(m1) < ray(m2)) hi = m2;
    else lo = m1;
  }
  return std::min({best, coarse, ray(0.5 * (lo + hi))});
}

inline MatrixXd random_psd(Index k, std::mt19937_64& rng, Index rank = -1) {
  std::normal_distribution<double> normal;
  const Index r = rank < 0 ? k : rank;
  MatrixXd f(k, r);
  for (Index i = 0; i < k; ++i)
    for (Index j = 0; j < r; ++j) f(i, j) = normal(rng);
  return f * f.transpose();
}

inline MatrixXd random_layout(Index n, Index dim, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1, 1);
  MatrixXd p(n, dim);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < dim; ++j) p(i, j) = u(rng);
  return p;
}

}  // namespace oracle
