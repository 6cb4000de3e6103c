#pragma once

#include <Eigen/Dense>

#include "etop/errors.hpp"

namespace etop {

/// Dense matrix of pairwise squared distances.
using CostMatrix = Eigen::MatrixXd;

/// Discrete probability measure on N points in R^d: nonnegative weights
/// summing to one. Immutable by convention once validated.
struct WeightedPointCloud {
  Eigen::MatrixXd points;   // N x d, one point per row
  Eigen::VectorXd weights;  // length N

  int size() const { return static_cast<int>(points.rows()); }
  int dim() const { return static_cast<int>(points.cols()); }

  /// Cloud with uniform weights 1/N.
  static WeightedPointCloud uniform(Eigen::MatrixXd pts);

  /// Throws ConfigError/DimensionError when the invariants do not hold
  /// (weights >= 0 and summing to 1 within 1e-12, N >= 1, d >= 1).
  void validate() const;
};

enum class MetricKind { Euclidean, Torus };

/// Euclidean metric on R^d, or the flat torus R^d/Z^d with unit period per
/// coordinate. Torus distances are computed on the representative with each
/// coordinate difference reduced into (-1/2, 1/2].
struct Metric {
  MetricKind kind = MetricKind::Euclidean;

  static Metric euclidean() { return {MetricKind::Euclidean}; }
  static Metric torus() { return {MetricKind::Torus}; }

  double squared_distance(const Eigen::RowVectorXd& x, const Eigen::RowVectorXd& y) const;
  double distance(const Eigen::RowVectorXd& x, const Eigen::RowVectorXd& y) const;
};

/// Distance on the unit torus: min over integer shifts of the Euclidean
/// distance of representatives. Total function, bounded by sqrt(d)/2.
double torus_distance(const Eigen::RowVectorXd& x, const Eigen::RowVectorXd& y);

/// Pairwise squared distances, entries[i][j] = d(X_i, Y_j)^2.
/// Throws DimensionError when the clouds do not share a dimension.
CostMatrix pairwise_cost(const Eigen::MatrixXd& x_points, const Eigen::MatrixXd& y_points,
                         const Metric& metric);
CostMatrix pairwise_cost(const WeightedPointCloud& x, const WeightedPointCloud& y,
                         const Metric& metric);

}  // namespace etop
