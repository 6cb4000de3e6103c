#include "etop/transfer.hpp"

#include <string>

namespace etop {

Eigen::VectorXd TransferMatrix::apply(const Eigen::VectorXd& density_values) const {
  if (density_values.size() != gamma.cols())
    throw DimensionError("TransferMatrix::apply: vector length does not match");
  return gamma * density_values;
}

TransferMatrix build_entropic_transfer(const WeightedPointCloud& cloud,
                                       const Eigen::MatrixXd& images, double epsilon,
                                       const Metric& metric, SinkhornConfig config) {
  cloud.validate();
  if (images.rows() != cloud.points.rows() || images.cols() != cloud.points.cols())
    throw DimensionError("build_entropic_transfer: images shape does not match cloud");

  // Cost for the self-coupling under the map: c_hat(j, k) = d(F(x_j), x_k)^2.
  const CostMatrix map_cost = pairwise_cost(images, cloud.points, metric);
  config.epsilon = epsilon;
  const TransportSolution solution = sinkhorn(map_cost, cloud.weights, cloud.weights, config);
  if (!solution.converged)
    throw ConvergenceError("build_entropic_transfer: Sinkhorn stalled at marginal error " +
                               std::to_string(solution.marginal_error),
                           solution.marginal_error);

  const Eigen::MatrixXd g = plan_density(solution, map_cost);
  TransferMatrix t;
  t.gamma = g.transpose() * cloud.weights.asDiagonal();
  t.weights = cloud.weights;
  t.epsilon = epsilon;
  t.metric = metric;
  return t;
}

Eigen::MatrixXd koopman_matrix(const TransferMatrix& t) {
  const Eigen::Index n = t.gamma.rows();
  Eigen::MatrixXd k(n, n);
  for (Eigen::Index row = 0; row < n; ++row) {
    if (t.weights[row] <= 0.0) {
      k.row(row).setZero();
      continue;
    }
    for (Eigen::Index col = 0; col < n; ++col)
      k(row, col) = t.gamma(col, row) * t.weights[col] / t.weights[row];
  }
  return k;
}

}  // namespace etop
