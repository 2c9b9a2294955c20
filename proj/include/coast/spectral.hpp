#pragma once

#include "coast/detail/lanczos.hpp"
#include "coast/errors.hpp"
#include "coast/graph.hpp"

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include <cmath>
#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

namespace coast {

template <typename Scalar = double>
using SparseLaplacian = Eigen::SparseMatrix<Scalar>;

enum class LaplacianWeights {
  unit,         ///< L = D - A of the unweighted graph (default)
  edge_weight,  ///< adjacency entries are the edge weights w_ij
};

/// Graph Laplacian L = D - A. The graph must be connected so that the zero
/// eigenvalue is simple.
template <typename Scalar = double>
SparseLaplacian<Scalar> build_laplacian(const Graph& g, LaplacianWeights weights = LaplacianWeights::unit) {
  if (!is_connected(g)) throw InputError("laplacian basis needs a connected graph");
  const Index n = g.num_vertices();
  std::vector<Eigen::Triplet<Scalar>> triplets;
  triplets.reserve(static_cast<std::size_t>(n + 2 * g.num_edges()));
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> degree = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>::Zero(n);
  for (const auto& e : g.edges()) {
    const Scalar a = weights == LaplacianWeights::unit ? Scalar(1) : static_cast<Scalar>(e.weight);
    triplets.emplace_back(e.u, e.v, -a);
    triplets.emplace_back(e.v, e.u, -a);
    degree(e.u) += a;
    degree(e.v) += a;
  }
  for (Index v = 0; v < n; ++v) triplets.emplace_back(v, v, degree(v));
  SparseLaplacian<Scalar> lap(n, n);
  lap.setFromTriplets(triplets.begin(), triplets.end());
  lap.makeCompressed();
  return lap;
}

/// Laplacian eigenvectors of the k smallest nonzero eigenvalues.
template <typename Scalar = double>
struct ReducedBasis {
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  Matrix vectors;      ///< n x k, orthonormal, orthogonal to the all-ones vector
  Vector eigenvalues;  ///< ascending

  Index size() const noexcept { return vectors.cols(); }
  Index num_vertices() const noexcept { return vectors.rows(); }
};

struct EigenOptions {
  Index k = 20;
  double tol = 1e-8;
  /// 0 selects 100 * k.
  Index max_restarts = 0;
  std::uint64_t seed = 0;
  /// Krylov subspace size; 0 selects max(2k + 20, 50).
  Index subspace = 0;
  /// Number of eigenpairs sought per multiplicity probe.
  Index probe = 4;
};

namespace detail {

template <typename Scalar>
void normalize_signs(Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& vectors) {
  for (Index c = 0; c < vectors.cols(); ++c) {
    Index arg = 0;
    vectors.col(c).cwiseAbs().maxCoeff(&arg);
    if (vectors(arg, c) < 0) vectors.col(c) = -vectors.col(c);
  }
}

}  // namespace detail

/// Smallest k nonzero eigenpairs of a connected-graph Laplacian.
///
/// Thick-restart Lanczos with the normalized all-ones vector deflated. A
/// single Krylov sequence sees one direction per eigenspace, so after the
/// first pass the complement of the found vectors is probed from a fresh
/// random start; any eigenvalue below the current k-th is merged in by a
/// Rayleigh-Ritz step and the probe repeats until none is found.
template <typename Scalar = double>
ReducedBasis<Scalar> smallest_k_eigenpairs(const SparseLaplacian<Scalar>& laplacian, const EigenOptions& options) {
  using Matrix = typename ReducedBasis<Scalar>::Matrix;
  using Vector = typename ReducedBasis<Scalar>::Vector;

  const Index n = laplacian.rows();
  if (n < 2) throw InputError("eigenbasis needs at least two vertices");
  Index k = options.k;
  if (k < 1) throw InputError("basis size must be positive");
  if (k > n - 1) {
    std::clog << "coast: warning: basis size " << k << " clamped to " << n - 1 << '\n';
    k = n - 1;
  }
  const Scalar tol = static_cast<Scalar>(options.tol);
  const Index max_restarts = options.max_restarts > 0 ? options.max_restarts : 100 * k;
  auto subspace_for = [&](Index nev) {
    return options.subspace > 0 ? std::max(options.subspace, nev + 1) : std::max<Index>(2 * nev + 20, 50);
  };

  std::mt19937_64 rng(options.seed);
  Matrix deflation = Matrix::Constant(n, 1, Scalar(1) / std::sqrt(static_cast<Scalar>(n)));

  auto fail = [](Scalar residual) {
    throw NumericalError("eigensolver did not converge; worst residual " + std::to_string(static_cast<double>(residual)));
  };

  auto first = detail::thick_restart_lanczos<Scalar>(laplacian, deflation, k, subspace_for(k), tol, max_restarts, rng);
  if (!first.converged) fail(first.worst_residual);
  Matrix vectors = std::move(first.vectors);
  Vector values = std::move(first.values);

  while (n - 1 - k > 0) {
    Matrix block(n, 1 + k);
    block.col(0) = deflation.col(0);
    block.rightCols(k) = vectors;
    const Index want = std::min(options.probe, n - 1 - k);
    auto probe = detail::thick_restart_lanczos<Scalar>(laplacian, block, want, subspace_for(want), tol, max_restarts, rng);
    if (!probe.converged) fail(probe.worst_residual);

    const Scalar ceiling = values(k - 1) - std::max(tol, Scalar(1e-12) * std::abs(values(k - 1)));
    Index below = 0;
    while (below < probe.values.size() && probe.values(below) < ceiling) ++below;
    if (below == 0) break;

    Matrix merged(n, k + below);
    merged << vectors, probe.vectors.leftCols(below);
    const Matrix reduced = merged.transpose() * (laplacian * merged);
    Eigen::SelfAdjointEigenSolver<Matrix> rr(Matrix(Scalar(0.5) * (reduced + reduced.transpose())));
    vectors = merged * rr.eigenvectors().leftCols(k);
    values = rr.eigenvalues().head(k);
  }

  Scalar worst = 0;
  for (Index c = 0; c < k; ++c) worst = std::max(worst, (laplacian * vectors.col(c) - values(c) * vectors.col(c)).norm());
  if (worst > Scalar(10) * tol) fail(worst);

  detail::normalize_signs(vectors);
  return {std::move(vectors), std::move(values)};
}

}  // namespace coast
