#pragma once

#include "etop/geometry.hpp"
#include "etop/sinkhorn.hpp"

namespace etop {

/// Discrete entropic transfer operator on a point cloud. `gamma` is the
/// N x N Markov matrix acting on density values by matrix-vector product:
/// rows index target points, columns index source points, so
/// gamma(l, m) = g(m, l) * weights(m) with g the plan density of the entropic
/// self-coupling under the map-modified cost.
///
/// Structural guarantees (up to the solver tolerance): every row sums to 1
/// (the constant function is a fixed point) and the weight vector is a left
/// fixed point (the sampled measure is preserved).
struct TransferMatrix {
  Eigen::MatrixXd gamma;
  Eigen::VectorXd weights;
  double epsilon = 0.0;
  Metric metric;

  int size() const { return static_cast<int>(gamma.rows()); }

  /// gamma * density_values.
  Eigen::VectorXd apply(const Eigen::VectorXd& density_values) const;
};

/// Builds the entropic transfer matrix for the dynamics x -> F(x) sampled as
/// `images` (row i is the image of cloud point i). One Sinkhorn solve on the
/// modified cost c(F(x_j), x_k) between the cloud weights and themselves;
/// no second coupling step is needed.
///
/// Throws ConvergenceError (carrying the final marginal error) when Sinkhorn
/// does not reach its tolerance, DimensionError on shape mismatch.
TransferMatrix build_entropic_transfer(const WeightedPointCloud& cloud,
                                       const Eigen::MatrixXd& images, double epsilon,
                                       const Metric& metric, SinkhornConfig config = {});

/// Matrix of the discrete Koopman operator: entry (k, j) is
/// t(x_k, x_j) * weights(j), the weighted transpose of the plan-density
/// kernel. Shares its spectrum with `gamma`. Rows of zero-weight points are
/// zero.
Eigen::MatrixXd koopman_matrix(const TransferMatrix& t);

}  // namespace etop
