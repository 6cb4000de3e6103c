#include "etop/baselines.hpp"

#include <Eigen/QR>

#include <cmath>
#include <string>

namespace etop {

namespace {

// Row-normalized Gaussian transition matrix for the given cost:
// P(j,k) = exp(-cost(j,k)/eps) m_k / sum_k' exp(-cost(j,k')/eps) m_k'.
Eigen::MatrixXd row_normalized_kernel(const CostMatrix& cost, const Eigen::VectorXd& weights,
                                      double epsilon) {
  const Eigen::Index m = cost.rows(), n = cost.cols();
  Eigen::MatrixXd p(m, n);
  for (Eigen::Index j = 0; j < m; ++j) {
    double mx = -std::numeric_limits<double>::infinity();
    for (Eigen::Index k = 0; k < n; ++k)
      if (weights[k] > 0.0) mx = std::max(mx, -cost(j, k) / epsilon + std::log(weights[k]));
    if (!std::isfinite(mx))
      throw NumericsError("normalized kernel: row " + std::to_string(j) +
                          " degenerated to zero; increase epsilon");
    double denom = 0.0;
    for (Eigen::Index k = 0; k < n; ++k) {
      const double v = weights[k] > 0.0
                           ? std::exp(-cost(j, k) / epsilon + std::log(weights[k]) - mx)
                           : 0.0;
      p(j, k) = v;
      denom += v;
    }
    p.row(j) /= denom;
  }
  return p;
}

}  // namespace

Eigen::MatrixXd normalized_gaussian_transfer(const WeightedPointCloud& cloud,
                                             const Eigen::MatrixXd& images, double epsilon,
                                             const Metric& metric) {
  cloud.validate();
  if (!(epsilon > 0.0)) throw ConfigError("normalized_gaussian_transfer: epsilon must be > 0");
  if (images.rows() != cloud.points.rows() || images.cols() != cloud.points.cols())
    throw DimensionError("normalized_gaussian_transfer: images shape does not match cloud");
  return row_normalized_kernel(pairwise_cost(images, cloud.points, metric), cloud.weights,
                               epsilon);
}

Eigen::MatrixXd diffusion_map_operator(const WeightedPointCloud& cloud, double epsilon,
                                       const Metric& metric) {
  cloud.validate();
  if (!(epsilon > 0.0)) throw ConfigError("diffusion_map_operator: epsilon must be > 0");
  return row_normalized_kernel(pairwise_cost(cloud.points, cloud.points, metric), cloud.weights,
                               epsilon);
}

EdmdMatrices edmd_matrices(const WeightedPointCloud& cloud, const Eigen::MatrixXd& images,
                           double epsilon, double sigma) {
  cloud.validate();
  if (!(epsilon > 0.0)) throw ConfigError("edmd_matrices: epsilon must be > 0");
  if (sigma < 0.0) throw ConfigError("edmd_matrices: sigma must be >= 0");
  if (images.rows() != cloud.points.rows() || images.cols() != cloud.points.cols())
    throw DimensionError("edmd_matrices: images shape does not match cloud");
  const Metric metric = Metric::euclidean();
  const Eigen::Index n = cloud.points.rows();

  Eigen::MatrixXd a = (-pairwise_cost(cloud.points, cloud.points, metric) / epsilon)
                          .array()
                          .exp()
                          .matrix();
  a.diagonal().array() += sigma;
  const Eigen::MatrixXd b =
      (-pairwise_cost(images, cloud.points, metric) / epsilon).array().exp().matrix();

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(a);
  if (sigma == 0.0) {
    const Eigen::VectorXd diag = qr.matrixR().diagonal().cwiseAbs();
    if (qr.rank() < n || diag.minCoeff() < 1e-13 * diag.maxCoeff())
      throw NumericsError(
          "edmd_matrices: dictionary matrix is numerically singular; use sigma > 0");
  }
  EdmdMatrices result;
  result.koopman = qr.solve(b);
  result.transfer = qr.solve(b.transpose());
  return result;
}

void ThreeStateModel::validate() const {
  if (p1 < 0.0 || p2 < 0.0) throw ConfigError("ThreeStateModel: probabilities must be >= 0");
  if (1.0 - 2.0 * p2 < 0.0 || 1.0 - p1 - p2 < 0.0)
    throw ConfigError("ThreeStateModel: diagonal transition mass would be negative");
  if (!(d1 > 0.0 && d2 > 0.0)) throw ConfigError("ThreeStateModel: distances must be positive");
}

Eigen::Matrix3d ThreeStateModel::transition_matrix() const {
  validate();
  Eigen::Matrix3d t;
  t << 1.0 - 2.0 * p2, p2, p2,
       p2, 1.0 - p1 - p2, p1,
       p2, p1, 1.0 - p1 - p2;
  return t;
}

Eigen::Matrix3d ThreeStateModel::cost_matrix() const {
  validate();
  Eigen::Matrix3d c;
  c << 0.0, d2 * d2, d2 * d2,
       d2 * d2, 0.0, d1 * d1,
       d2 * d2, d1 * d1, 0.0;
  return c;
}

Eigen::Matrix3d three_state_transfer(const ThreeStateModel& model, double epsilon,
                                     SinkhornConfig config) {
  model.validate();
  const Eigen::Vector3d uniform = Eigen::Vector3d::Constant(1.0 / 3.0);
  config.epsilon = epsilon;
  const TransportSolution solution =
      sinkhorn(model.cost_matrix(), uniform, uniform, config);
  if (!solution.converged)
    throw ConvergenceError("three_state_transfer: Sinkhorn stalled at marginal error " +
                               std::to_string(solution.marginal_error),
                           solution.marginal_error);
  // Plan transition matrix: G(i,j) = g(i,j) nu_j.
  const Eigen::Matrix3d g = plan_density(solution, model.cost_matrix());
  const Eigen::Matrix3d coupling = g * (1.0 / 3.0);
  return coupling * model.transition_matrix();
}

}  // namespace etop
