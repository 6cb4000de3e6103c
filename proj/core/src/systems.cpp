#include "etop/systems.hpp"

#include <cmath>
#include <vector>

#include "etop/rng.hpp"

namespace etop {

void LorenzParams::validate() const {
  if (!(tau > 0.0)) throw ConfigError("LorenzParams: tau must be positive");
  if (!(rk4_step > 0.0)) throw ConfigError("LorenzParams: rk4_step must be positive");
  const double ratio = tau / rk4_step;
  if (std::abs(ratio - std::round(ratio)) > 1e-12 * std::max(1.0, ratio))
    throw ConfigError("LorenzParams: rk4_step must divide tau (integer substeps)");
}

long long LorenzParams::substeps() const {
  validate();
  return static_cast<long long>(std::llround(tau / rk4_step));
}

namespace {

inline double fract_unit(double v) {
  double x = v - std::floor(v);
  if (x >= 1.0) x -= 1.0;  // guard against rounding up to 1.0
  return x;
}

inline Eigen::Vector3d lorenz_rhs(const LorenzParams& p, const Eigen::Vector3d& s) {
  return {p.sigma * (s[1] - s[0]), s[0] * (p.rho - s[2]) - s[1], s[0] * s[1] - p.beta * s[2]};
}

inline Eigen::Vector3d rk4_step_state(const LorenzParams& p, const Eigen::Vector3d& s, double h) {
  const Eigen::Vector3d k1 = lorenz_rhs(p, s);
  const Eigen::Vector3d k2 = lorenz_rhs(p, s + 0.5 * h * k1);
  const Eigen::Vector3d k3 = lorenz_rhs(p, s + 0.5 * h * k2);
  const Eigen::Vector3d k4 = lorenz_rhs(p, s + h * k3);
  return s + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

}  // namespace

Eigen::MatrixXd shift_map(const ShiftMapSpec& spec, const Eigen::MatrixXd& points) {
  spec.validate();
  if (points.cols() != spec.dim) throw DimensionError("shift_map: points dimension != spec.dim");
  Eigen::MatrixXd out(points.rows(), points.cols());
  for (Eigen::Index c = 0; c < points.cols(); ++c)
    for (Eigen::Index i = 0; i < points.rows(); ++i)
      out(i, c) = fract_unit(points(i, c) + spec.theta[c]);
  return out;
}

WeightedPointCloud lattice_cloud(const ShiftMapSpec& spec) {
  spec.validate();
  const int n = spec.lattice_n;
  const long long total = spec.point_count();
  Eigen::MatrixXd points(total, spec.dim);
  std::vector<int> idx(spec.dim, 0);
  for (long long row = 0; row < total; ++row) {
    for (int c = 0; c < spec.dim; ++c) points(row, c) = static_cast<double>(idx[c]) / n;
    int axis = 0;
    while (axis < spec.dim && ++idx[axis] == n) {
      idx[axis] = 0;
      ++axis;
    }
  }
  return WeightedPointCloud::uniform(std::move(points));
}

WeightedPointCloud uniform_random_cloud(int n, int d, std::uint64_t seed) {
  if (n < 1 || d < 1) throw ConfigError("uniform_random_cloud: need n >= 1, d >= 1");
  Rng rng(seed);
  Eigen::MatrixXd points(n, d);
  for (int i = 0; i < n; ++i)
    for (int c = 0; c < d; ++c) points(i, c) = rng.next_double();
  return WeightedPointCloud::uniform(std::move(points));
}

Eigen::MatrixXd lorenz_flow_map(const LorenzParams& params, const Eigen::MatrixXd& points) {
  if (points.cols() != 3) throw DimensionError("lorenz_flow_map: points must be N x 3");
  const long long steps = params.substeps();
  Eigen::MatrixXd out(points.rows(), 3);
  for (Eigen::Index i = 0; i < points.rows(); ++i) {
    Eigen::Vector3d s = points.row(i).transpose();
    for (long long step = 0; step < steps; ++step) {
      s = rk4_step_state(params, s, params.rk4_step);
      if (!s.allFinite())
        throw NumericsError("lorenz_flow_map: point " + std::to_string(i) +
                            " diverged during integration");
    }
    out.row(i) = s.transpose();
  }
  return out;
}

DynamicalSample lorenz_trajectory_cloud(const LorenzParams& params,
                                        const Eigen::Vector3d& initial, double t_burn,
                                        double t_end, int n_samples) {
  params.validate();
  if (!(t_burn >= 0.0 && t_burn < t_end))
    throw ConfigError("lorenz_trajectory_cloud: need 0 <= t_burn < t_end");
  if (n_samples < 2) throw ConfigError("lorenz_trajectory_cloud: need n_samples >= 2");

  const double h = params.rk4_step;
  const long long image_offset = params.substeps();
  std::vector<long long> sample_steps(n_samples);
  const double dt = (t_end - t_burn) / (n_samples - 1);
  for (int i = 0; i < n_samples; ++i)
    sample_steps[i] = std::llround((t_burn + i * dt) / h);
  const long long last_step = sample_steps.back() + image_offset;

  Eigen::MatrixXd points(n_samples, 3), images(n_samples, 3);
  Eigen::Vector3d s = initial;
  int next_sample = 0, next_image = 0;
  for (long long step = 0; step <= last_step; ++step) {
    while (next_sample < n_samples && sample_steps[next_sample] == step) {
      points.row(next_sample) = s.transpose();
      ++next_sample;
    }
    while (next_image < n_samples && sample_steps[next_image] + image_offset == step) {
      images.row(next_image) = s.transpose();
      ++next_image;
    }
    if (step == last_step) break;
    s = rk4_step_state(params, s, h);
    if (!s.allFinite())
      throw NumericsError("lorenz_trajectory_cloud: integration diverged at t = " +
                          std::to_string(step * h));
  }
  return {WeightedPointCloud::uniform(std::move(points)), std::move(images)};
}

DynamicalSample delay_map_dataset(const TrajectoryDataset& data, int lag, int stride) {
  if (lag < 1 || stride < 1) throw ConfigError("delay_map_dataset: lag and stride must be >= 1");
  const long long frames = data.frames.rows();
  const long long count = (frames - lag) / stride;
  if (count < 1)
    throw ConfigError("delay_map_dataset: insufficient frames (" + std::to_string(frames) +
                      "); need at least lag + stride = " + std::to_string(lag + stride));
  Eigen::MatrixXd points(count, data.frames.cols()), images(count, data.frames.cols());
  for (long long i = 0; i < count; ++i) {
    points.row(i) = data.frames.row(i * stride);
    images.row(i) = data.frames.row(i * stride + lag);
  }
  return {WeightedPointCloud::uniform(std::move(points)), std::move(images)};
}

}  // namespace etop
