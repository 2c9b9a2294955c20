#pragma once

#include <Eigen/Core>

#include <map>
#include <string>
#include <vector>

namespace coast {

/// Node coordinates (one row per vertex) plus how they were produced.
struct Layout {
  Eigen::MatrixXd positions;
  std::string algorithm;
  std::map<std::string, double> params;
  /// Input vertex id of each row; empty means row i is vertex i.
  std::vector<Eigen::Index> ids;

  Eigen::Index size() const noexcept { return positions.rows(); }
  Eigen::Index dim() const noexcept { return positions.cols(); }
  Eigen::Index id(Eigen::Index row) const { return ids.empty() ? row : ids[static_cast<std::size_t>(row)]; }
};

}  // namespace coast
