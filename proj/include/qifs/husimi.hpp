#pragma once

#include <string>

#include "qifs/linalg.hpp"

namespace qifs {

/// Rectangular grid of nonnegative phase-space values.
/// Sphere grids: rows index theta in [0,pi], cols phi in [0,2pi).
/// Torus grids: rows index momentum p, cols position q, both in [0,1).
struct HusimiGrid {
  Eigen::MatrixXd values;
  int dim = 0;        // Hilbert-space dimension N
  double row_min = 0.0, row_max = 1.0;
  double col_min = 0.0, col_max = 1.0;
  std::string row_label = "p";
  std::string col_label = "q";

  int rows() const { return static_cast<int>(values.rows()); }
  int cols() const { return static_cast<int>(values.cols()); }
  double total() const { return values.sum(); }

  /// Column sums normalized to 1 (mass profile along the column axis).
  Eigen::VectorXd col_profile() const;
  Eigen::VectorXd row_profile() const;
};

/// L1 distance between sum-normalized grids of equal shape.
double l1_normalized_distance(const HusimiGrid& a, const HusimiGrid& b);

double pearson_correlation(const Eigen::VectorXd& a, const Eigen::VectorXd& b);

}  // namespace qifs
