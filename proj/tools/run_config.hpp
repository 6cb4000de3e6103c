#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <etop/systems.hpp>
#include <etop/torus_oracle.hpp>

namespace etop::cli {

/// Everything a command run needs, populated from an optional config file and
/// then from flags (flags win). See the README for the config grammar.
struct RunConfig {
  // system
  std::string system = "shift";  // shift | lorenz | delay-file | three-state
  int dim = 1;
  std::vector<double> theta = {1.0 / 3.0};
  int n = 200;                      // lattice points per axis (shift) / samples (lorenz)
  std::string sampling = "lattice";  // shift sampling: lattice | random
  // lorenz
  double tau = 0.1;
  double rk4_step = 1e-3;
  double t_burn = 200.0;
  double t_end = 2000.0;
  // delay-file
  std::string input;
  std::string format = "csv";  // csv | raw-f64
  int lag = 1;
  int stride = 1;
  // three-state
  double p1 = 0.01, p2 = 0.05, d1 = 1.0, d2 = 10.0;

  // method & solver
  std::string method = "entropic";  // entropic | normalized-gaussian | edmd | diffusion-map
  std::string eps;                  // comma list or logspace:a:b:k (exponents a, b)
  double sinkhorn_tol = 1e-9;
  int max_iterations = 10'000;
  double sigma = 0.1;  // edmd ridge

  // eigensolver
  int top_k = 10;
  double eig_tol = 1e-9;
  std::string eig_method = "auto";  // auto | dense | arnoldi
  double imag_tol = 1e-6;

  // analysis
  int k = 3;        // k-means clusters
  int evecs = 2;    // eigenvectors used for clustering
  double min_real_eig = 0.5;
  long long q_max = 1000;  // oracle convergent search bound

  // output
  std::string out = "out";
  bool json = false;
  std::uint64_t seed = 42;
};

/// Parses --eps: either a comma list of positive reals or
/// "logspace:a:b:k" for k log-spaced values from 10^a to 10^b.
std::vector<double> parse_eps_grid(const std::string& spec);

/// Flat key=value config file ('#' comments, optional [section] headers that
/// are organizational only). Returns the pairs in file order.
std::vector<std::pair<std::string, std::string>> parse_config_file(const std::string& path);

struct SampledInstance {
  WeightedPointCloud cloud;
  Eigen::MatrixXd images;
  Metric metric;
  ShiftMapSpec shift;  // valid when config.system == "shift"
};

/// Builds the configured dynamical system sample. Throws ConfigError for
/// three-state (which has no point cloud; commands special-case it).
SampledInstance build_instance(const RunConfig& config);

ShiftMapSpec shift_spec_from(const RunConfig& config);
LorenzParams lorenz_params_from(const RunConfig& config);

}  // namespace etop::cli
