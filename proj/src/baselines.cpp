#include "coast/baselines.hpp"

#include "coast/errors.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>

namespace coast {

namespace {

Eigen::VectorXd to_vector(const std::vector<double>& v) {
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Index>(v.size()));
}

void check_init(const Graph& g, const Layout& init) {
  if (init.size() != g.num_vertices()) throw InputError("initial layout and graph vertex counts differ");
  if (init.dim() < 1 || init.dim() > 8) throw InputError("majorization supports 1 to 8 dimensions");
}

// New position of vertex i minimizing the majorizer with the others fixed.
// `xt` holds one column per vertex.
template <typename Terms>
void localized_update(Eigen::MatrixXd& xt, Index i, Terms&& for_each_term) {
  const Index dim = xt.rows();
  double num[8] = {0, 0, 0, 0, 0, 0, 0, 0};
  double den = 0.0;
  const double* xi = xt.col(i).data();
  for_each_term([&](Index j, double d, double w) {
    const double* xj = xt.col(j).data();
    double delta2 = 0.0;
    for (Index c = 0; c < dim; ++c) delta2 += (xi[c] - xj[c]) * (xi[c] - xj[c]);
    const double coef = delta2 > 0.0 ? w * d / std::sqrt(delta2) : 0.0;
    for (Index c = 0; c < dim; ++c) num[c] += w * xj[c] + coef * (xi[c] - xj[c]);
    den += w;
  });
  if (den > 0.0)
    for (Index c = 0; c < dim; ++c) xt(c, i) = num[c] / den;
}

}  // namespace

PivotSet choose_pivots(const Graph& g, Index num_pivots, std::uint64_t seed) {
  const Index n = g.num_vertices();
  if (n == 0) throw InputError("pivots of an empty graph");
  if (num_pivots < 1 || num_pivots > n) throw InputError("pivot count must be in [1, n]");

  PivotSet set;
  set.dist.resize(num_pivots, n);
  Index next = static_cast<Index>(seed % static_cast<std::uint64_t>(n));
  Eigen::VectorXd nearest = Eigen::VectorXd::Constant(n, std::numeric_limits<double>::infinity());
  for (Index h = 0; h < num_pivots; ++h) {
    set.pivots.push_back(next);
    const Eigen::VectorXd d = to_vector(shortest_paths_from(g, next).dist);
    if (!d.allFinite()) throw InputError("pivot distances need a connected graph");
    set.dist.row(h) = d.transpose();
    nearest = nearest.cwiseMin(d);
    nearest.maxCoeff(&next);
  }
  return set;
}

Layout pivot_mds(const Graph& g, const PivotMdsOptions& options) {
  const Index n = g.num_vertices();
  const Index dim = options.dim;
  if (dim < 1) throw InputError("dimension must be positive");
  Layout layout;
  layout.algorithm = "pivotmds";
  layout.positions = Eigen::MatrixXd::Zero(n, dim);
  if (n <= 1) return layout;

  const Index h = options.num_pivots > 0 ? options.num_pivots : std::min<Index>(50, n);
  const PivotSet set = choose_pivots(g, h, options.seed);
  layout.params = {{"pivots", static_cast<double>(h)}, {"seed", static_cast<double>(options.seed)}};

  // c_ij = -1/2 (d_ij^2 - row mean - column mean + grand mean)
  Eigen::MatrixXd c = set.dist.transpose().array().square().matrix();
  const Eigen::VectorXd row_mean = c.rowwise().mean();
  const Eigen::RowVectorXd col_mean = c.colwise().mean();
  const double grand = c.mean();
  c.colwise() -= row_mean;
  c.rowwise() -= col_mean;
  c.array() += grand;
  c *= -0.5;

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(c.transpose() * c);
  for (Index a = 0; a < std::min(dim, h); ++a) {
    const Index src = h - 1 - a;
    const double mu = es.eigenvalues()(src);
    if (!(mu > 0.0)) break;
    const double sigma = std::sqrt(mu);
    Eigen::VectorXd u = c * es.eigenvectors().col(src) / sigma;
    Index arg = 0;
    u.cwiseAbs().maxCoeff(&arg);
    if (u(arg) < 0) u = -u;
    layout.positions.col(a) = u * std::sqrt(sigma);
  }

  double num = 0.0, den = 0.0;
  for (const auto& e : g.edges()) {
    const double delta = (layout.positions.row(e.u) - layout.positions.row(e.v)).norm();
    num += delta / e.length;
    den += delta * delta / (e.length * e.length);
  }
  if (den > 0.0) layout.positions *= num / den;
  return layout;
}

double edge_stress(const Graph& g, const Eigen::MatrixXd& positions) {
  double s = 0.0;
  for (const auto& e : g.edges()) {
    const double r = (positions.row(e.u) - positions.row(e.v)).norm() - e.length;
    s += r * r / (e.length * e.length);
  }
  return s;
}

MajorizationResult sparse_stress_majorization(const Graph& g, const Layout& init, const SparseStressOptions& options) {
  check_init(g, init);
  MajorizationResult res;
  res.layout = init;
  res.layout.algorithm = "pivotmds1";
  Eigen::MatrixXd xt = init.positions.transpose();
  double stress = edge_stress(g, init.positions);
  res.history.push_back(stress);
  for (Index sweep = 0; sweep < options.max_sweeps; ++sweep) {
    for (Index i = 0; i < g.num_vertices(); ++i) {
      localized_update(xt, i, [&](auto&& term) {
        for (const auto& nb : g.neighbors(i)) {
          const double d = g.edge(nb.edge).length;
          term(nb.vertex, d, 1.0 / (d * d));
        }
      });
    }
    const double next = edge_stress(g, xt.transpose());
    res.history.push_back(next);
    ++res.sweeps;
    const double drop = stress - next;
    stress = next;
    if (drop <= options.tol * std::max(stress, 1e-300)) {
      res.converged = true;
      break;
    }
  }
  res.layout.positions = xt.transpose();
  res.layout.params["sweeps"] = static_cast<double>(res.sweeps);
  return res;
}

MajorizationResult full_stress_majorization(const Graph& g, const Layout& init, const FullStressOptions& options) {
  check_init(g, init);
  const Index n = g.num_vertices();
  if (n > options.max_vertices)
    throw LimitError("full stress majorization on " + std::to_string(n) + " vertices exceeds the guard of " +
                     std::to_string(options.max_vertices) + "; use PivotMDS for large graphs");
  const Eigen::MatrixXd dist = all_pairs_distances(g, options.max_vertices);
  if (!dist.allFinite()) throw InputError("full stress needs a connected graph");

  auto stress_of = [&](const Eigen::MatrixXd& xt) {
    double s = 0.0;
    for (Index j = 0; j < n; ++j)
      for (Index i = j + 1; i < n; ++i) {
        const double d = dist(i, j);
        const double r = (xt.col(i) - xt.col(j)).norm() - d;
        s += r * r / (d * d);
      }
    return s;
  };

  MajorizationResult res;
  res.layout = init;
  res.layout.algorithm = "fsm";
  Eigen::MatrixXd xt = init.positions.transpose();
  double stress = stress_of(xt);
  res.history.push_back(stress);
  for (Index sweep = 0; sweep < options.max_sweeps; ++sweep) {
    for (Index i = 0; i < n; ++i) {
      localized_update(xt, i, [&](auto&& term) {
        for (Index j = 0; j < n; ++j) {
          if (j == i) continue;
          const double d = dist(j, i);
          term(j, d, 1.0 / (d * d));
        }
      });
    }
    const double next = stress_of(xt);
    res.history.push_back(next);
    ++res.sweeps;
    const double drop = stress - next;
    stress = next;
    if (drop <= options.tol * std::max(stress, 1e-300)) {
      res.converged = true;
      break;
    }
  }
  res.layout.positions = xt.transpose();
  res.layout.params["sweeps"] = static_cast<double>(res.sweeps);
  return res;
}

}  // namespace coast
