#pragma once

#include "coast/detail/random.hpp"
#include "coast/errors.hpp"
#include "coast/model.hpp"

#include <Eigen/Core>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace coast {

enum class StepRule { fixed, backtracking };

struct SolverConfig {
  Index max_iters = 20000;
  /// Objective-change test |T_m - T_{m-1}| <= rel_tol (1 + |T_m|).
  double rel_tol = 1e-9;
  /// Fixed-point residual test, relative to 1 + ||Y||; both tests must hold.
  double fp_tol = 1e-7;
  StepRule step_rule = StepRule::backtracking;
  bool acceleration = true;
  /// Diagonal congruence scaling of Y before the gradient iteration.
  bool precondition = true;
  std::uint64_t seed = 0;
};

/// Objective unbounded below on the PSD cone.
class UnboundedError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Nearest PSD matrix in Frobenius norm: negative eigenvalues clamped to 0.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic> project_psd(
    const Eigen::MatrixBase<Derived>& y) {
  using Scalar = typename Derived::Scalar;
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  const Matrix sym = Scalar(0.5) * (y + y.transpose());
  Eigen::SelfAdjointEigenSolver<Matrix> es(sym);
  const auto clamped = es.eigenvalues().cwiseMax(Scalar(0));
  Matrix out = es.eigenvectors() * clamped.asDiagonal() * es.eigenvectors().transpose();
  return Scalar(0.5) * (out + out.transpose());
}

namespace detail {

/// Largest eigenvalue of a symmetric PSD matrix by power iteration.
template <typename Scalar>
Scalar power_iteration(const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& a, std::mt19937_64& rng,
                       Index max_iters = 1000, Scalar tol = Scalar(1e-10)) {
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  Vector v = random_vector<Scalar>(a.rows(), rng);
  if (v.norm() == 0) v.setOnes();
  v.normalize();
  Scalar estimate = 0;
  for (Index it = 0; it < max_iters; ++it) {
    Vector w = a * v;
    const Scalar next = v.dot(w);
    const Scalar norm = w.norm();
    if (norm == 0) return 0;
    v = w / norm;
    if (std::abs(next - estimate) <= tol * std::abs(next)) return std::max(next, norm);
    estimate = next;
  }
  return estimate;
}

}  // namespace detail

/// Minimizes the reduced objective over the PSD cone.
///
/// Monotone accelerated projected gradient from Y = 0: a momentum step that
/// would increase T is rejected and the momentum reset. The step starts at
/// 1/L with L = 2 lambda_max(A) from power iteration and grows L by
/// backtracking. With `precondition` the iteration runs on Y~ = D^-1 Y D^-1,
/// D_a = A_{aa,aa}^{-1/4}; the congruence keeps the cone and the optimum.
template <typename Scalar>
GramSolution<Scalar> minimize(const QuadraticForm<Scalar>& form, const SolverConfig& config = {}) {
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  if (config.max_iters < 1) throw InputError("max_iters must be at least 1");
  if (!(config.rel_tol > 0)) throw InputError("rel_tol must be positive");

  const Index k = form.k;
  Vector scale = Vector::Ones(k);
  if (config.precondition) {
    for (Index a = 0; a < k; ++a) {
      const Scalar diag = form.gram(a * k + a, a * k + a);
      if (diag > 0) scale(a) = Scalar(1) / std::sqrt(std::sqrt(diag));
    }
  }
  // Kronecker scaling of vec(Y): entry a*k+b gets scale_a scale_b.
  Vector kron(k * k);
  for (Index a = 0; a < k; ++a) kron.segment(a * k, k) = scale(a) * scale;
  const Matrix gram = kron.asDiagonal() * form.gram * kron.asDiagonal();
  const Vector lin = kron.cwiseProduct(form.b);

  auto objective = [&](const Matrix& y) {
    const Eigen::Map<const Vector> v(y.data(), y.size());
    return v.dot(gram * v) + lin.dot(v) + form.c;
  };
  auto gradient = [&](const Matrix& y) {
    const Eigen::Map<const Vector> v(y.data(), y.size());
    const Vector g = Scalar(2) * (gram * v) + lin;
    const Eigen::Map<const Matrix> grad(g.data(), k, k);
    return Matrix(Scalar(0.5) * (grad + grad.transpose()));
  };

  std::mt19937_64 rng(config.seed);
  Scalar lipschitz = Scalar(2) * detail::power_iteration<Scalar>(gram, rng);
  if (!(lipschitz > 0)) lipschitz = 1;
  const Scalar floor = -Scalar(1e12) * (Scalar(1) + std::abs(form.c));

  GramSolution<Scalar> sol;
  Matrix x = Matrix::Zero(k, k);
  Matrix x_prev = x;
  Matrix y = x;
  Scalar fx = objective(x);
  sol.history.push_back(fx);
  Scalar momentum = 1;

  auto residual = [&](const Matrix& at, Scalar l) {
    return (at - project_psd(Matrix(at - gradient(at) / l))).norm();
  };

  Index it = 0;
  for (; it < config.max_iters; ++it) {
    const Matrix g = gradient(y);
    const Scalar fy = objective(y);
    Matrix z;
    Scalar fz = 0;
    for (;;) {
      z = project_psd(Matrix(y - g / lipschitz));
      fz = objective(z);
      if (config.step_rule == StepRule::fixed || !std::isfinite(static_cast<double>(fz))) break;
      const Matrix diff = z - y;
      const Scalar model = fy + g.cwiseProduct(diff).sum() + Scalar(0.5) * lipschitz * diff.squaredNorm();
      if (fz <= model + Scalar(1e-12) * (Scalar(1) + std::abs(fy))) break;
      lipschitz *= 2;
      if (!std::isfinite(static_cast<double>(lipschitz))) throw NumericalError("step size underflow in line search");
    }
    if (!std::isfinite(static_cast<double>(fz)) || fz < floor)
      throw UnboundedError("objective is unbounded below on the PSD cone");

    if (fz > fx) {
      // Momentum overshoot: restart from the last accepted iterate.
      momentum = 1;
      y = x;
      continue;
    }
    const Scalar f_old = fx;
    x_prev = x;
    x = z;
    fx = fz;
    sol.history.push_back(fx);
    if (config.acceleration) {
      const Scalar next = (Scalar(1) + std::sqrt(Scalar(1) + Scalar(4) * momentum * momentum)) / Scalar(2);
      y = x + ((momentum - Scalar(1)) / next) * (x - x_prev);
      momentum = next;
    } else {
      y = x;
    }

    if (std::abs(fx - f_old) <= static_cast<Scalar>(config.rel_tol) * (Scalar(1) + std::abs(fx)) &&
        residual(x, lipschitz) <= static_cast<Scalar>(config.fp_tol) * (Scalar(1) + x.norm())) {
      sol.converged = true;
      ++it;
      break;
    }
  }

  sol.iterations = it;
  sol.objective = fx;
  sol.y = scale.asDiagonal() * x * scale.asDiagonal();
  sol.y = Scalar(0.5) * (sol.y + sol.y.transpose());
  return sol;
}

/// Fixed-point residual ||Y - P(Y - s grad T(Y))|| in the original variable.
template <typename Scalar>
Scalar fixed_point_residual(const QuadraticForm<Scalar>& form,
                            const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& y, Scalar step) {
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  return (y - project_psd(Matrix(y - step * reduced_gradient(form, y)))).norm();
}

/// Conic reformulation  min p^T V  s.t.  q^T V = 1, S V = 0, W in K_{r+2},
/// Y PSD, with V = (W, vec Y), W = ((1+alpha)/2, (1-alpha)/2, Z), Z = R vec Y
/// and A = R^T R.
template <typename Scalar = double>
struct SqlpProblem {
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  Index k = 0;
  Index r = 0;
  Matrix R;  ///< r x k^2
  Vector b;
  Scalar c = 0;
  Vector p;  ///< (e-, b)
  Vector q;  ///< (e+, 0)
  Matrix S;  ///< (0_{r x 2}, -I_r, R)

  Index soc_dim() const noexcept { return r + 2; }
  Index psd_side() const noexcept { return k; }
  Index num_variables() const noexcept { return r + 2 + k * k; }

  /// V for a given Y with the tight alpha = ||R vec Y||^2.
  Vector variable_for(const Matrix& y) const {
    const Eigen::Map<const Vector> vy(y.data(), y.size());
    const Vector z = R * vy;
    const Scalar alpha = z.squaredNorm();
    Vector v(num_variables());
    v(0) = (Scalar(1) + alpha) / Scalar(2);
    v(1) = (Scalar(1) - alpha) / Scalar(2);
    v.segment(2, r) = z;
    v.tail(k * k) = vy;
    return v;
  }
};

namespace detail {

/// Pivoted Cholesky A = R^T R stopping when the largest remaining pivot is
/// at most `rel_tol` times the largest diagonal entry of A.
template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> pivoted_cholesky(
    const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& a, Scalar rel_tol) {
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  const Index n = a.rows();
  Vector diag = a.diagonal();
  const Scalar cutoff = rel_tol * (n > 0 ? std::max(diag.maxCoeff(), Scalar(0)) : Scalar(0));
  Matrix rows(n, n);
  Index rank = 0;
  while (rank < n) {
    Index piv = 0;
    const Scalar best = diag.maxCoeff(&piv);
    if (!(best > cutoff)) break;
    const Scalar root = std::sqrt(best);
    Vector row = a.row(piv).transpose();
    if (rank > 0) row.noalias() -= rows.topRows(rank).transpose() * rows.topRows(rank).col(piv);
    row /= root;
    rows.row(rank) = row.transpose();
    diag -= row.cwiseAbs2();
    diag(piv) = 0;
    ++rank;
  }
  return rows.topRows(rank);
}

}  // namespace detail

namespace detail {

/// Fills p, q and S from k, R and b.
template <typename Scalar>
void fill_conic(SqlpProblem<Scalar>& prob) {
  using Matrix = typename SqlpProblem<Scalar>::Matrix;
  using Vector = typename SqlpProblem<Scalar>::Vector;
  const Index kk = prob.k * prob.k;
  const Index r = prob.r;
  prob.p = Vector::Zero(r + 2 + kk);
  prob.p(0) = 1;
  prob.p(1) = -1;
  prob.p.tail(kk) = prob.b;
  prob.q = Vector::Zero(r + 2 + kk);
  prob.q(0) = 1;
  prob.q(1) = 1;
  prob.S = Matrix::Zero(r, r + 2 + kk);
  prob.S.block(0, 2, r, r) = -Matrix::Identity(r, r);
  prob.S.rightCols(kk) = prob.R;
}

}  // namespace detail

template <typename Scalar>
SqlpProblem<Scalar> assemble_sqlp(const QuadraticForm<Scalar>& form, Scalar pivot_tol = Scalar(1e-10)) {
  SqlpProblem<Scalar> prob;
  prob.k = form.k;
  prob.R = detail::pivoted_cholesky<Scalar>(form.gram, pivot_tol);
  prob.r = prob.R.rows();
  prob.b = form.b;
  prob.c = form.c;
  detail::fill_conic(prob);
  return prob;
}

/// Text format, one record per line, values with 17 significant digits:
///
///   %%COAST-SQLP 1
///   % comment lines
///   k <k>
///   r <r>
///   cones soc <r+2> psd <k>
///   c <c>
///   b <k^2 values>
///   R                      (only when r > 0)
///   <r rows of k^2 values>
///
/// A problem with r = 0 is header-only.
template <typename Scalar>
void write_sqlp(const SqlpProblem<Scalar>& prob, std::ostream& out) {
  auto put = [&](Scalar v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", static_cast<double>(v));
    out << buf;
  };
  out << "%%COAST-SQLP 1\n";
  out << "% min p'V  s.t.  q'V = 1, S V = 0, W in K_{r+2}, Y psd; p = (1,-1,0..,b), q = (1,1,0..,0), S = (0,-I,R)\n";
  out << "k " << prob.k << '\n';
  out << "r " << prob.r << '\n';
  out << "cones soc " << prob.soc_dim() << " psd " << prob.psd_side() << '\n';
  out << "c ";
  put(prob.c);
  out << "\nb";
  for (Index i = 0; i < prob.b.size(); ++i) {
    out << ' ';
    put(prob.b(i));
  }
  out << '\n';
  if (prob.r == 0) return;
  out << "R\n";
  for (Index i = 0; i < prob.r; ++i) {
    for (Index j = 0; j < prob.R.cols(); ++j) {
      if (j > 0) out << ' ';
      put(prob.R(i, j));
    }
    out << '\n';
  }
}

template <typename Scalar>
void export_sqlp(const SqlpProblem<Scalar>& prob, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  write_sqlp(prob, out);
  out.flush();
  if (!out) throw IoError("failed writing " + path.string());
}

/// Parses the format written by write_sqlp and rebuilds p, q and S.
template <typename Scalar = double>
SqlpProblem<Scalar> read_sqlp(std::istream& in) {
  using Vector = typename SqlpProblem<Scalar>::Vector;
  std::string line;
  long lineno = 0;
  auto next = [&]() -> std::string {
    while (std::getline(in, line)) {
      ++lineno;
      if (lineno == 1) {
        if (line.rfind("%%COAST-SQLP", 0) != 0) throw ParseError("missing %%COAST-SQLP banner", lineno);
        continue;
      }
      if (line.empty() || line[0] == '%') continue;
      return line;
    }
    throw ParseError("unexpected end of file", lineno + 1);
  };
  auto keyed = [&](const char* key) {
    std::istringstream ss(next());
    std::string word;
    ss >> word;
    if (word != key) throw ParseError(std::string("expected '") + key + "'", lineno);
    return ss;
  };
  auto read_values = [&](std::istringstream& ss, Index count, Vector& dest) {
    dest.resize(count);
    for (Index i = 0; i < count; ++i) {
      double v = 0;
      if (!(ss >> v)) throw ParseError("expected " + std::to_string(count) + " values", lineno);
      dest(i) = static_cast<Scalar>(v);
    }
  };

  long k = 0, r = 0;
  if (!(keyed("k") >> k) || k < 0) throw ParseError("bad k", lineno);
  if (!(keyed("r") >> r) || r < 0) throw ParseError("bad r", lineno);
  keyed("cones");
  double c = 0;
  if (!(keyed("c") >> c)) throw ParseError("bad c", lineno);

  SqlpProblem<Scalar> prob;
  prob.k = k;
  prob.r = r;
  prob.c = static_cast<Scalar>(c);
  auto bline = keyed("b");
  read_values(bline, k * k, prob.b);
  prob.R.resize(r, k * k);
  if (r > 0) {
    if (next() != "R") throw ParseError("expected 'R'", lineno);
    for (long i = 0; i < r; ++i) {
      std::istringstream ss(next());
      Vector row;
      read_values(ss, k * k, row);
      prob.R.row(i) = row.transpose();
    }
  }
  detail::fill_conic(prob);
  return prob;
}

}  // namespace coast
