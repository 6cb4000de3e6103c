#include "etop/geometry.hpp"

#include <cmath>

namespace etop {

WeightedPointCloud WeightedPointCloud::uniform(Eigen::MatrixXd pts) {
  const auto n = pts.rows();
  WeightedPointCloud cloud{std::move(pts), Eigen::VectorXd::Constant(n, 1.0 / static_cast<double>(n))};
  cloud.validate();
  return cloud;
}

void WeightedPointCloud::validate() const {
  if (points.rows() < 1 || points.cols() < 1)
    throw ConfigError("point cloud needs N >= 1 points in d >= 1 dimensions");
  if (weights.size() != points.rows())
    throw DimensionError("weight vector length does not match point count");
  if ((weights.array() < 0.0).any()) throw ConfigError("negative weight in point cloud");
  if (!points.allFinite() || !weights.allFinite())
    throw ConfigError("non-finite entry in point cloud");
  if (std::abs(weights.sum() - 1.0) > 1e-12)
    throw ConfigError("weights must sum to 1 within 1e-12");
}

namespace {

// Difference reduced into [-1/2, 1/2]; at the boundary both signs square
// to the same cost, so round's tie behaviour is irrelevant.
inline double wrap_unit(double diff) { return diff - std::round(diff); }

}  // namespace

double torus_distance(const Eigen::RowVectorXd& x, const Eigen::RowVectorXd& y) {
  double acc = 0.0;
  for (Eigen::Index c = 0; c < x.size(); ++c) {
    const double w = wrap_unit(y[c] - x[c]);
    acc += w * w;
  }
  return std::sqrt(acc);
}

double Metric::squared_distance(const Eigen::RowVectorXd& x, const Eigen::RowVectorXd& y) const {
  if (kind == MetricKind::Euclidean) return (x - y).squaredNorm();
  double acc = 0.0;
  for (Eigen::Index c = 0; c < x.size(); ++c) {
    const double w = wrap_unit(y[c] - x[c]);
    acc += w * w;
  }
  return acc;
}

double Metric::distance(const Eigen::RowVectorXd& x, const Eigen::RowVectorXd& y) const {
  return std::sqrt(squared_distance(x, y));
}

CostMatrix pairwise_cost(const Eigen::MatrixXd& x_points, const Eigen::MatrixXd& y_points,
                         const Metric& metric) {
  if (x_points.cols() != y_points.cols())
    throw DimensionError("pairwise_cost: clouds have different dimensions");
  const Eigen::Index m = x_points.rows(), n = y_points.rows(), d = x_points.cols();
  CostMatrix cost = CostMatrix::Zero(m, n);
  // Accumulate one coordinate at a time; column-major access stays contiguous
  // and coincident points give an exact zero.
  if (metric.kind == MetricKind::Euclidean) {
    for (Eigen::Index c = 0; c < d; ++c) {
      const auto xc = x_points.col(c);
      const auto yc = y_points.col(c);
      for (Eigen::Index j = 0; j < n; ++j) {
        const double yj = yc[j];
        for (Eigen::Index i = 0; i < m; ++i) {
          const double diff = xc[i] - yj;
          cost(i, j) += diff * diff;
        }
      }
    }
  } else {
    for (Eigen::Index c = 0; c < d; ++c) {
      const auto xc = x_points.col(c);
      const auto yc = y_points.col(c);
      for (Eigen::Index j = 0; j < n; ++j) {
        const double yj = yc[j];
        for (Eigen::Index i = 0; i < m; ++i) {
          const double diff = wrap_unit(yj - xc[i]);
          cost(i, j) += diff * diff;
        }
      }
    }
  }
  return cost;
}

CostMatrix pairwise_cost(const WeightedPointCloud& x, const WeightedPointCloud& y,
                         const Metric& metric) {
  return pairwise_cost(x.points, y.points, metric);
}

}  // namespace etop
