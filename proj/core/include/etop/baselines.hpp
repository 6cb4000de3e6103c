#pragma once

#include "etop/sinkhorn.hpp"
#include "etop/transfer.hpp"

namespace etop {

/// Comparison operator constructions. All matrices here are returned in
/// row-stochastic transition convention (row = source point, column = target
/// point, entries weighted by the target weights), so plain row sums are 1 by
/// construction. Unlike the entropic TransferMatrix, the cloud weights are
/// generally NOT a stationary vector of these operators. Spectra are
/// orientation-independent, so they compare directly against the entropic
/// operator's.

/// Conditional Gaussian kernel normalized over targets:
/// P(j,k) = exp(-c(F(x_j), x_k)/eps) m_k / C(x_j), which equals a single
/// alpha-half-iteration of Sinkhorn from zero potentials. Computed with a
/// row-max shift; throws NumericsError when a row degenerates (non-finite
/// cost or all target weights zero), suggesting a larger epsilon.
Eigen::MatrixXd normalized_gaussian_transfer(const WeightedPointCloud& cloud,
                                             const Eigen::MatrixXd& images, double epsilon,
                                             const Metric& metric);

struct EdmdMatrices {
  Eigen::MatrixXd koopman;   // solves (A + sigma I) K ~= B
  Eigen::MatrixXd transfer;  // solves (A + sigma I) T ~= B^T
};

/// Kernel EDMD with radial Gaussian dictionary centered at the sample points:
/// A_ij = exp(-c(x_j, x_i)/eps) + sigma delta_ij, B_ij = exp(-c(x_j, F(x_i))/eps).
/// Solved through a rank-revealing column-pivoted QR, never an explicit
/// pseudo-inverse. With sigma = 0 a numerically singular A throws
/// NumericsError recommending sigma > 0.
EdmdMatrices edmd_matrices(const WeightedPointCloud& cloud, const Eigen::MatrixXd& images,
                           double epsilon, double sigma);

/// Diffusion-map Markov operator; ignores the dynamics entirely:
/// P(j,k) = exp(-c(x_j, x_k)/eps) m_k / C(x_j).
Eigen::MatrixXd diffusion_map_operator(const WeightedPointCloud& cloud, double epsilon,
                                       const Metric& metric);

/// Three-state Markov chain with two separation scales: states 2 and 3 sit
/// at distance d1 from each other, state 1 at distance d2 from both.
struct ThreeStateModel {
  double p1 = 0.01;
  double p2 = 0.05;
  double d1 = 1.0;
  double d2 = 10.0;

  void validate() const;
  Eigen::Matrix3d transition_matrix() const;
  Eigen::Matrix3d cost_matrix() const;  // squared distances
};

/// Entropically smoothed three-state transfer matrix G^eps * T, where G^eps
/// is the transition matrix of the entropic self-coupling of the uniform
/// 3-point measure under the squared distance matrix. Exercises the full
/// Sinkhorn path at its smallest scale.
Eigen::Matrix3d three_state_transfer(const ThreeStateModel& model, double epsilon,
                                     SinkhornConfig config = {});

}  // namespace etop
