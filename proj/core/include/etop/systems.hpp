#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "etop/geometry.hpp"
#include "etop/shift_map.hpp"

namespace etop {

/// Lorenz vector field parameters plus the flow-map integration setup:
/// F = flow over time tau, integrated with classical fixed-step RK4.
struct LorenzParams {
  double sigma = 10.0;
  double rho = 28.0;
  double beta = 8.0 / 3.0;
  double tau = 0.1;
  double rk4_step = 1e-3;

  void validate() const;
  long long substeps() const;  // tau / rk4_step, validated integral
};

/// Raw trajectory frames (one state per row).
struct TrajectoryDataset {
  Eigen::MatrixXd frames;  // M x d
  std::optional<double> dt_label;
  std::string source;
};

/// A sampled dynamical system: cloud points plus the image of each point
/// under the map (row-aligned).
struct DynamicalSample {
  WeightedPointCloud cloud;
  Eigen::MatrixXd images;
};

/// x -> x + theta componentwise, reduced mod 1 into [0,1).
Eigen::MatrixXd shift_map(const ShiftMapSpec& spec, const Eigen::MatrixXd& points);

/// Regular lattice { j/n } per axis (stored in [0,1)), uniform weights 1/N.
WeightedPointCloud lattice_cloud(const ShiftMapSpec& spec);

/// n i.i.d. uniform points in [0,1)^d from the seeded portable generator,
/// uniform weights. Coordinates are drawn row by row, coordinate-major.
WeightedPointCloud uniform_random_cloud(int n, int d, std::uint64_t seed);

/// Advances each row state by the flow time tau with fixed-step RK4.
/// Throws NumericsError naming the point when an intermediate state leaves
/// the finite range.
Eigen::MatrixXd lorenz_flow_map(const LorenzParams& params, const Eigen::MatrixXd& points);

/// Integrates from `initial`, discards [0, t_burn], and returns n_samples
/// states equidistant on [t_burn, t_end] (endpoints included) with uniform
/// weights; images are the same states advanced by tau, read off the same
/// trajectory so the pairing is exact.
DynamicalSample lorenz_trajectory_cloud(const LorenzParams& params,
                                        const Eigen::Vector3d& initial, double t_burn,
                                        double t_end, int n_samples);

/// Time-delay map on trajectory data: cloud points are frames
/// 0, stride, 2*stride, ... and the image of each is the frame `lag` steps
/// later. Keeps n = floor((M - lag) / stride) points.
DynamicalSample delay_map_dataset(const TrajectoryDataset& data, int lag, int stride);

}  // namespace etop
