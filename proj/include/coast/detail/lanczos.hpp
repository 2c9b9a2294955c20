#pragma once

#include "coast/detail/random.hpp"

#include <Eigen/Core>
#include <Eigen/Eigenvalues>
#include <Eigen/SparseCore>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace coast::detail {

template <typename Scalar>
struct LanczosResult {
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> values;
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> vectors;
  bool converged = false;
  Scalar worst_residual = 0;
  Eigen::Index restarts = 0;
};

/// Thick-restart Lanczos for the `nev` smallest eigenpairs of a sparse
/// symmetric operator restricted to the orthogonal complement of the
/// orthonormal columns of `deflation`.
///
/// Every new Krylov vector is fully reorthogonalized (two classical
/// Gram-Schmidt passes) against the basis and the deflation block, so the
/// projected matrix is formed from explicit projections rather than the
/// three-term recurrence. After a restart the kept Ritz vectors form a
/// diagonal block and their coupling to the continuation vector is picked
/// up by the next projection.
template <typename Scalar>
LanczosResult<Scalar> thick_restart_lanczos(const Eigen::SparseMatrix<Scalar>& op,
                                            const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& deflation,
                                            Eigen::Index nev, Eigen::Index subspace, Scalar tol,
                                            Eigen::Index max_restarts, std::mt19937_64& rng) {
  using Index = Eigen::Index;
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  const Index n = op.rows();
  const Index avail = n - deflation.cols();
  LanczosResult<Scalar> result;
  if (avail <= 0 || nev <= 0) {
    result.converged = true;
    result.vectors.resize(n, 0);
    return result;
  }
  nev = std::min(nev, avail);
  const Index m = std::clamp(subspace, std::min(nev + 1, avail), avail);

  Scalar op_norm = 0;
  for (Index c = 0; c < op.outerSize(); ++c) {
    Scalar col = 0;
    for (typename Eigen::SparseMatrix<Scalar>::InnerIterator it(op, c); it; ++it) col += std::abs(it.value());
    op_norm = std::max(op_norm, col);
  }
  const Scalar breakdown = std::max(op_norm, Scalar(1)) * Scalar(64) * std::numeric_limits<Scalar>::epsilon();

  Matrix basis(n, m + 1);
  Matrix projected = Matrix::Zero(m, m);

  auto deflate = [&](Vector& w) {
    if (deflation.cols() > 0) w.noalias() -= deflation * (deflation.transpose() * w);
  };
  // Random unit vector orthogonal to the deflation block and the first
  // `cols` basis vectors; zero-norm result means the space is exhausted.
  auto fresh_direction = [&](Index cols, Vector& out) {
    out = random_vector<Scalar>(n, rng);
    for (int pass = 0; pass < 2; ++pass) {
      deflate(out);
      if (cols > 0) out.noalias() -= basis.leftCols(cols) * (basis.leftCols(cols).transpose() * out);
    }
    const Scalar norm = out.norm();
    if (norm <= Scalar(1e-10) * std::sqrt(static_cast<Scalar>(n))) return false;
    out /= norm;
    return true;
  };

  Vector w(n);
  if (!fresh_direction(0, w)) throw std::logic_error("lanczos: empty search space");
  basis.col(0) = w;

  Index kept = 0;
  for (Index restart = 0;; ++restart) {
    Index size = m;
    Scalar beta_last = 0;
    bool continuation = false;
    for (Index j = kept; j < m; ++j) {
      w.noalias() = op * basis.col(j);
      Vector h = basis.leftCols(j + 1).transpose() * w;
      w.noalias() -= basis.leftCols(j + 1) * h;
      deflate(w);
      const Vector h2 = basis.leftCols(j + 1).transpose() * w;
      w.noalias() -= basis.leftCols(j + 1) * h2;
      deflate(w);
      h += h2;
      projected.col(j).head(j + 1) = h;
      projected.row(j).head(j + 1) = h.transpose();

      const Scalar beta = w.norm();
      if (j + 1 == m) {
        beta_last = beta;
        if (beta > breakdown) {
          basis.col(m) = w / beta;
          continuation = true;
        }
        break;
      }
      if (beta > breakdown) {
        basis.col(j + 1) = w / beta;
        continue;
      }
      // Invariant subspace: restart the recurrence in a fresh direction.
      Vector fresh;
      if (j + 1 >= avail || !fresh_direction(j + 1, fresh)) {
        size = j + 1;
        break;
      }
      basis.col(j + 1) = fresh;
    }

    Eigen::SelfAdjointEigenSolver<Matrix> ritz(projected.topLeftCorner(size, size));
    const Vector& theta = ritz.eigenvalues();
    const Matrix& coeffs = ritz.eigenvectors();
    const Index want = std::min(nev, size);
    const bool exhausted = size == avail || (size < m && !continuation);

    bool estimated = true;
    for (Index i = 0; i < want; ++i)
      if (std::abs(beta_last * coeffs(size - 1, i)) > tol) estimated = false;

    if (estimated || exhausted || restart >= max_restarts) {
      Matrix x = basis.leftCols(size) * coeffs.leftCols(want);
      Scalar worst = 0;
      for (Index i = 0; i < want; ++i) {
        const Vector r = op * x.col(i) - theta(i) * x.col(i);
        worst = std::max(worst, r.norm());
      }
      if (worst <= tol || exhausted || restart >= max_restarts) {
        result.values = theta.head(want);
        result.vectors = std::move(x);
        result.worst_residual = worst;
        result.converged = worst <= tol;
        result.restarts = restart;
        return result;
      }
    }

    kept = std::clamp(want + (size - want) / 2, want, size - 1);
    const Matrix ritz_vectors = basis.leftCols(size) * coeffs.leftCols(kept);
    basis.leftCols(kept) = ritz_vectors;
    projected.setZero();
    projected.diagonal().head(kept) = theta.head(kept);
    if (continuation) {
      basis.col(kept) = basis.col(m);
    } else {
      Vector fresh;
      if (!fresh_direction(kept, fresh)) throw std::logic_error("lanczos: cannot continue restart");
      basis.col(kept) = fresh;
    }
  }
}

}  // namespace coast::detail
