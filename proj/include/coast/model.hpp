#pragma once

#include "coast/errors.hpp"
#include "coast/graph.hpp"
#include "coast/layout.hpp"
#include "coast/spectral.hpp"

#include <Eigen/Core>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <optional>

namespace coast {

/// Default dispersion weight t. See README for how it was chosen.
inline constexpr double kDefaultDispersion = 0.001;

struct ModelParams {
  /// Trade-off between edge-length conformity (small) and spread (large).
  double t = kDefaultDispersion;
  /// Term-balance factor; computed by balance_lambda when empty.
  std::optional<double> lambda;
  Index k = 20;
  Index dim = 2;
};

/// |E| / (C(n,2) - |E| + 1).
inline double balance_lambda(Index n, Index m) {
  if (n < 2) throw InputError("balance factor needs at least two vertices");
  if (m <= 0) throw InputError("balance factor needs at least one edge");
  const double pairs = 0.5 * static_cast<double>(n) * static_cast<double>(n - 1);
  if (static_cast<double>(m) > pairs) throw InputError("more edges than vertex pairs");
  return static_cast<double>(m) / (pairs - static_cast<double>(m) + 1.0);
}

inline double resolve_lambda(const Graph& g, const ModelParams& params) {
  return params.lambda ? *params.lambda : balance_lambda(g.num_vertices(), g.num_edges());
}

/// The reduced objective T(Y) = ||M vec(Y)||^2 + b^T vec(Y) + c over the
/// k x k Gram variable Y.
///
/// Row e of M is w_e (dq_e (x) dq_e) with dq_e = q_i - q_j. M is kept in
/// factored form (the per-edge differences and weights); `gram` holds the
/// dense k^2 x k^2 product A = M^T M used by the solver.
template <typename Scalar = double>
struct QuadraticForm {
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  Index k = 0;
  Matrix edge_diff;    ///< |E| x k, row e = q_i - q_j
  Vector edge_weight;  ///< w_e
  Vector b;            ///< length k^2
  Scalar c = 0;
  Matrix gram;  ///< A = M^T M, k^2 x k^2

  Index num_edges() const noexcept { return edge_diff.rows(); }

  /// Materializes M (|E| x k^2).
  Matrix factor() const {
    Matrix m(num_edges(), k * k);
    for (Index e = 0; e < num_edges(); ++e) {
      for (Index col = 0; col < k; ++col)
        m.row(e).segment(col * k, k) = edge_weight(e) * edge_diff(e, col) * edge_diff.row(e);
    }
    return m;
  }

  /// M vec(Y) evaluated edge by edge: w_e dq_e^T Y dq_e.
  Vector factor_times(const Matrix& y) const {
    Vector out(num_edges());
    for (Index e = 0; e < num_edges(); ++e) {
      const auto dq = edge_diff.row(e);
      out(e) = edge_weight(e) * dq.dot(y * dq.transpose());
    }
    return out;
  }
};

/// Optimized Gram matrix and solver diagnostics.
template <typename Scalar = double>
struct GramSolution {
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> y;
  Scalar objective = 0;
  Index iterations = 0;
  bool converged = false;
  /// Objective after every accepted iterate (non-increasing).
  std::vector<Scalar> history;
};

/// (q_i - q_j) (x) (q_i - q_j); entry a*k + b is dq_a * dq_b.
template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, 1> edge_row(const ReducedBasis<Scalar>& basis, Index i, Index j) {
  if (i == j) throw InputError("edge_row needs distinct vertices");
  const Eigen::Matrix<Scalar, Eigen::Dynamic, 1> dq = (basis.vectors.row(i) - basis.vectors.row(j)).transpose();
  const Index k = dq.size();
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> row(k * k);
  for (Index a = 0; a < k; ++a) row.segment(a * k, k) = dq(a) * dq;
  return row;
}

/// Streams the edges once to build the factored quadratic form.
template <typename Scalar>
QuadraticForm<Scalar> assemble(const Graph& g, const ReducedBasis<Scalar>& basis, const ModelParams& params) {
  using Matrix = typename QuadraticForm<Scalar>::Matrix;
  using Vector = typename QuadraticForm<Scalar>::Vector;
  if (basis.num_vertices() != g.num_vertices()) throw InputError("basis and graph vertex counts differ");
  if (params.t < 0) throw InputError("t must be nonnegative");

  const Index k = basis.size();
  const Index m = g.num_edges();
  const Scalar t_lambda = static_cast<Scalar>(params.t * resolve_lambda(g, params));

  QuadraticForm<Scalar> form;
  form.k = k;
  form.edge_diff.resize(m, k);
  form.edge_weight.resize(m);
  Vector linear_coeff(m);
  form.c = 0;
  for (Index e = 0; e < m; ++e) {
    const auto& ed = g.edge(e);
    const Scalar w = static_cast<Scalar>(ed.weight);
    const Scalar d2 = static_cast<Scalar>(ed.length * ed.length);
    form.edge_diff.row(e) = basis.vectors.row(ed.u) - basis.vectors.row(ed.v);
    form.edge_weight(e) = w;
    linear_coeff(e) = t_lambda - Scalar(2) * w * w * d2;
    form.c += w * w * d2 * d2;
  }

  // b = sum_e (t lambda - 2 w^2 d^2) vec(dq dq^T) - n t lambda vec(I)
  Matrix linear = form.edge_diff.transpose() * linear_coeff.asDiagonal() * form.edge_diff;
  linear.diagonal().array() -= static_cast<Scalar>(g.num_vertices()) * t_lambda;
  form.b = Eigen::Map<const Vector>(linear.data(), k * k);

  // A = M^T M accumulated over row blocks of M.
  constexpr Index block = 1024;
  form.gram = Matrix::Zero(k * k, k * k);
  Matrix rows;
  for (Index start = 0; start < m; start += block) {
    const Index count = std::min(block, m - start);
    rows.resize(k * k, count);
    for (Index r = 0; r < count; ++r) {
      const Index e = start + r;
      const auto dq = form.edge_diff.row(e);
      for (Index col = 0; col < k; ++col)
        rows.col(r).segment(col * k, k) = (form.edge_weight(e) * dq(col)) * dq.transpose();
    }
    form.gram.template selfadjointView<Eigen::Lower>().rankUpdate(rows);
  }
  form.gram.template triangularView<Eigen::StrictlyUpper>() = form.gram.transpose();
  return form;
}

namespace detail {

template <typename Derived>
auto centered(const Eigen::MatrixBase<Derived>& positions) {
  using Scalar = typename Derived::Scalar;
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> p = positions;
  if (p.rows() > 0) p.rowwise() -= p.colwise().mean();
  return p;
}

}  // namespace detail

/// T(P) evaluated in position space. P is centered first; the non-edge sum
/// is all-pairs minus edges, with all-pairs = n * sum_i |x_i|^2.
template <typename Derived>
typename Derived::Scalar direct_objective(const Graph& g, const Eigen::MatrixBase<Derived>& positions,
                                          const ModelParams& params) {
  using Scalar = typename Derived::Scalar;
  if (positions.rows() != g.num_vertices()) throw InputError("layout and graph vertex counts differ");
  const auto p = detail::centered(positions);
  const Scalar t_lambda = static_cast<Scalar>(params.t * resolve_lambda(g, params));

  Scalar edge_term = 0;
  Scalar edge_spread = 0;
  for (const auto& e : g.edges()) {
    const Scalar len2 = (p.row(e.u) - p.row(e.v)).squaredNorm();
    const Scalar w = static_cast<Scalar>(e.weight);
    const Scalar r = w * len2 - w * static_cast<Scalar>(e.length * e.length);
    edge_term += r * r;
    edge_spread += len2;
  }
  const Scalar all_pairs = static_cast<Scalar>(g.num_vertices()) * p.squaredNorm();
  return edge_term - t_lambda * (all_pairs - edge_spread);
}

template <typename Scalar>
Scalar reduced_objective(const QuadraticForm<Scalar>& form,
                         const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& y) {
  const Eigen::Map<const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>> v(y.data(), y.size());
  return v.dot(form.gram * v) + form.b.dot(v) + form.c;
}

/// Symmetrized reshape(2 A vec(Y) + b).
template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> reduced_gradient(
    const QuadraticForm<Scalar>& form, const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& y) {
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  const Eigen::Map<const Vector> v(y.data(), y.size());
  const Vector g = Scalar(2) * (form.gram * v) + form.b;
  const Eigen::Map<const Matrix> grad(g.data(), form.k, form.k);
  return Scalar(0.5) * (grad + grad.transpose());
}

/// P = Q U_dim Lambda_dim^{1/2} from the dim largest eigenpairs of Y (negative
/// eigenvalues clamped to zero).
template <typename Scalar>
Layout recover_positions(const ReducedBasis<Scalar>& basis,
                         const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& y, Index dim) {
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  const Index k = basis.size();
  if (dim < 1 || dim > k) throw InputError("embedding dimension must be in [1, k]");
  if (y.rows() != k || y.cols() != k) throw InputError("Gram matrix size does not match the basis");

  Eigen::SelfAdjointEigenSolver<Matrix> es(Matrix(Scalar(0.5) * (y + y.transpose())));
  const auto& values = es.eigenvalues();
  if (!(values(k - 1) > 0)) throw NumericalError("degenerate solution: Gram matrix has no positive eigenvalue");

  Matrix factor(k, dim);
  for (Index c = 0; c < dim; ++c) {
    const Index src = k - 1 - c;
    factor.col(c) = es.eigenvectors().col(src) * std::sqrt(std::max(values(src), Scalar(0)));
  }
  Layout layout;
  layout.positions = (basis.vectors * factor).template cast<double>();
  layout.algorithm = "coast";
  return layout;
}

template <typename Scalar>
Layout recover_positions(const ReducedBasis<Scalar>& basis, const GramSolution<Scalar>& solution, Index dim) {
  return recover_positions(basis, solution.y, dim);
}

/// X = P P^T of the centered positions.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic> gram_from_layout(
    const Eigen::MatrixBase<Derived>& positions) {
  const auto p = detail::centered(positions);
  return p * p.transpose();
}

}  // namespace coast
