#pragma once

#include <limits>
#include <optional>

#include "etop/geometry.hpp"

namespace etop {

/// Geometric epsilon-scaling schedule: the solve starts at
/// start_factor * (max cost entry) and multiplies by `decay` until the target
/// epsilon is reached, warm-starting the potentials at each level.
struct EpsilonScalingSchedule {
  double start_factor = 1.0;
  double decay = 0.5;
};

struct SinkhornConfig {
  double epsilon = 1e-2;          // regularization, units of squared distance
  int max_iterations = 10'000;    // per epsilon level
  double marginal_tolerance = 1e-9;  // L1 deviation of either plan marginal

  /// Explicit schedule; when unset and auto_epsilon_scaling is true, scaling
  /// with the default schedule turns on automatically for
  /// epsilon < 1e-3 * (max cost entry), where a cold start would underflow.
  std::optional<EpsilonScalingSchedule> epsilon_scaling;
  bool auto_epsilon_scaling = true;
};

/// Dual potentials of an entropic transport solve. The plan density relative
/// to the product measure is g_ij = exp((-c_ij + alpha_i + beta_j) / epsilon),
/// and plan mass is g_ij * mu_i * nu_j. Potentials are gauge-fixed so that
/// alpha at the first positive-weight index is zero; indices with zero weight
/// carry potential zero and are excluded from the iteration.
struct TransportSolution {
  Eigen::VectorXd alpha;  // length M (source side)
  Eigen::VectorXd beta;   // length N (target side)
  double epsilon = 0.0;
  bool converged = false;
  double marginal_error = std::numeric_limits<double>::infinity();
  int iterations_used = 0;
};

/// Log-domain Sinkhorn iteration for the entropic transport problem between
/// weight vectors mu (rows of `cost`) and nu (columns). Never exponentiates
/// unshifted dual values: every reduction is a streaming log-sum-exp, so
/// epsilon as small as 1e-6 on unit-scale data is fine.
///
/// On return the column marginal of the plan is satisfied to machine
/// precision (the final half-update enforces it) and the row marginal to
/// `marginal_tolerance` in L1. Non-convergence is reported through the
/// `converged` flag rather than an exception; callers decide.
TransportSolution sinkhorn(const CostMatrix& cost, const Eigen::VectorXd& mu,
                           const Eigen::VectorXd& nu, const SinkhornConfig& config);

/// Density of the plan relative to mu (x) nu:
/// g_ij = exp((-c_ij + alpha_i + beta_j) / epsilon).
Eigen::MatrixXd plan_density(const TransportSolution& solution, const CostMatrix& cost);

/// Max of the L1 deviations of the two reconstructed plan marginals from mu
/// and nu. Zero-weight rows/columns contribute nothing.
double marginal_error(const TransportSolution& solution, const CostMatrix& cost,
                      const Eigen::VectorXd& mu, const Eigen::VectorXd& nu);

}  // namespace etop
