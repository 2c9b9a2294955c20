#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <random>

namespace coast::detail {

/// Uniform in [-1, 1) built from raw engine bits, so streams are identical
/// across standard libraries (std distributions are implementation-defined).
template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, 1> random_vector(Eigen::Index n, std::mt19937_64& rng) {
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> v(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    v(i) = static_cast<Scalar>(2.0 * u - 1.0);
  }
  return v;
}

}  // namespace coast::detail
