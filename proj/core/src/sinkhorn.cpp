#include "etop/sinkhorn.hpp"

#include <cmath>
#include <vector>

namespace etop {

namespace {

// out_i = log sum_j exp(W_ij), streaming shift by the row maximum.
void lse_rows(const Eigen::MatrixXd& w, Eigen::VectorXd& out) {
  const Eigen::VectorXd mx = w.rowwise().maxCoeff();
  out = mx.array() + (w.colwise() - mx).array().exp().rowwise().sum().log();
}

// out_j = log sum_i exp(W_ij).
void lse_cols(const Eigen::MatrixXd& w, Eigen::VectorXd& out) {
  const Eigen::RowVectorXd mx = w.colwise().maxCoeff();
  out = (mx.array() + (w.rowwise() - mx).array().exp().colwise().sum().log()).transpose();
}

std::vector<int> positive_indices(const Eigen::VectorXd& v) {
  std::vector<int> idx;
  idx.reserve(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (v[i] > 0.0) idx.push_back(static_cast<int>(i));
  return idx;
}

void validate_weights(const Eigen::VectorXd& w, const char* name) {
  if ((w.array() < 0.0).any()) throw ConfigError(std::string(name) + " has a negative entry");
  if (!w.allFinite()) throw ConfigError(std::string(name) + " has a non-finite entry");
  if (std::abs(w.sum() - 1.0) > 1e-12)
    throw ConfigError(std::string(name) + " must sum to 1 within 1e-12");
}

std::vector<double> epsilon_levels(const SinkhornConfig& config, double max_cost) {
  const double target = config.epsilon;
  EpsilonScalingSchedule schedule;
  bool scale = false;
  if (config.epsilon_scaling) {
    schedule = *config.epsilon_scaling;
    scale = true;
  } else if (config.auto_epsilon_scaling && max_cost > 0.0 && target < 1e-3 * max_cost) {
    scale = true;  // cold start at this epsilon would be needlessly stiff
  }
  std::vector<double> levels;
  if (scale) {
    if (!(schedule.decay > 0.0 && schedule.decay < 1.0))
      throw ConfigError("epsilon_scaling decay must lie in (0,1)");
    if (!(schedule.start_factor > 0.0))
      throw ConfigError("epsilon_scaling start_factor must be positive");
    double eps = schedule.start_factor * max_cost;
    while (eps > target * (1.0 + 1e-12)) {
      levels.push_back(eps);
      eps *= schedule.decay;
    }
  }
  levels.push_back(target);
  return levels;
}

}  // namespace

TransportSolution sinkhorn(const CostMatrix& cost, const Eigen::VectorXd& mu,
                           const Eigen::VectorXd& nu, const SinkhornConfig& config) {
  if (cost.rows() != mu.size() || cost.cols() != nu.size())
    throw DimensionError("sinkhorn: cost shape does not match weight vectors");
  if (!cost.allFinite()) throw ConfigError("sinkhorn: cost has non-finite entries");
  if (!(config.epsilon > 0.0)) throw ConfigError("sinkhorn: epsilon must be positive");
  if (!(config.marginal_tolerance > 0.0))
    throw ConfigError("sinkhorn: marginal_tolerance must be positive");
  if (config.max_iterations < 1) throw ConfigError("sinkhorn: max_iterations must be positive");
  validate_weights(mu, "mu");
  validate_weights(nu, "nu");

  // Zero-weight rows/columns carry no plan mass; drop them and reinsert
  // zero potentials afterwards.
  const std::vector<int> rows = positive_indices(mu);
  const std::vector<int> cols = positive_indices(nu);
  const int m = static_cast<int>(rows.size());
  const int n = static_cast<int>(cols.size());

  Eigen::MatrixXd c(m, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < m; ++i) c(i, j) = cost(rows[i], cols[j]);
  Eigen::VectorXd mu_act(m), nu_act(n);
  for (int i = 0; i < m; ++i) mu_act[i] = mu[rows[i]];
  for (int j = 0; j < n; ++j) nu_act[j] = nu[cols[j]];
  const Eigen::VectorXd log_mu = mu_act.array().log();
  const Eigen::VectorXd log_nu = nu_act.array().log();

  const std::vector<double> levels = epsilon_levels(config, c.maxCoeff());

  Eigen::VectorXd alpha = Eigen::VectorXd::Zero(m);
  Eigen::VectorXd beta = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd row_lse(m), col_lse(n);
  Eigen::MatrixXd work(m, n);
  const double tol = config.marginal_tolerance;
  double err = std::numeric_limits<double>::infinity();
  int iterations = 0;

  for (std::size_t level = 0; level < levels.size(); ++level) {
    const double eps = levels[level];
    // Intermediate levels only warm-start the next one; converging them to
    // the full tolerance wastes most of the iteration budget.
    const bool final_level = level + 1 == levels.size();
    const double level_tol = final_level ? tol : std::max(tol, 1e-4);
    const Eigen::MatrixXd scaled_cost = -c / eps;
    const auto update_beta_plain = [&] {
      work = scaled_cost;
      work.array().colwise() += (alpha / eps + log_mu).array();
      lse_cols(work, col_lse);
      beta = -eps * col_lse;
    };

    // Overrelaxation ladder. Weakly coupled instances (cross-block costs many
    // epsilons deep) contract like 1 - exp(-cost/eps) under plain updates;
    // overrelaxing both half-updates past the critical factor turns that into
    // ~(omega - 1) per iteration. The factor ramps up only while the measured
    // window rate stagnates and backs off if the error grows.
    double omega = 1.0;
    bool beta_is_plain = false;  // warm starts are not plain for this level
    constexpr int kWindow = 32;
    double window_err = std::numeric_limits<double>::infinity();

    for (int iter = 0; iter <= config.max_iterations; ++iter) {
      // Row-side marginal of the current (alpha, beta):
      //   sum_j g_ij nu_j = exp(alpha_i/eps + lse_j(-c_ij/eps + beta_j/eps + log nu_j)).
      // The column side is exact whenever beta is a plain update, so this is
      // the whole stopping criterion.
      work = scaled_cost;
      work.array().rowwise() += (beta / eps + log_nu).transpose().array();
      lse_rows(work, row_lse);
      err = ((alpha / eps + row_lse).array().exp() - 1.0).abs().matrix().dot(mu_act);

      if (!final_level && err <= level_tol) break;
      if (final_level && err <= level_tol && beta_is_plain) break;
      if (final_level && err <= 0.25 * level_tol && !beta_is_plain) {
        update_beta_plain();  // polish: pin the column marginal exactly
        beta_is_plain = true;
        continue;
      }
      if (iter == config.max_iterations) break;

      if (iter % kWindow == 0) {
        if (err > 0.0 && std::isfinite(window_err)) {
          const double ratio = err / window_err;
          if (ratio > 1e3) {
            omega = 1.0;  // genuine blowup, drop back to plain updates
          } else if (ratio > 0.5 && omega == 1.0) {
            // Measured plain rate ~ the squared Jacobi radius; the critical
            // factor 2/(1 + sqrt(1 - rho)) then gives rate ~ omega - 1.
            const double rho = std::min(std::pow(ratio, 1.0 / kWindow), 1.0 - 1e-12);
            omega = std::min(2.0 / (1.0 + std::sqrt(1.0 - rho * rho)), 1.999);
          } else if (ratio > 0.85) {
            omega = std::min(omega + 0.7 * (1.999 - omega), 1.999);  // underestimated
          }
        }
        window_err = err;
      }

      alpha = (1.0 - omega) * alpha - omega * eps * row_lse;
      work = scaled_cost;
      work.array().colwise() += (alpha / eps + log_mu).array();
      lse_cols(work, col_lse);
      beta = (1.0 - omega) * beta - omega * eps * col_lse;
      beta_is_plain = omega == 1.0;
      ++iterations;
    }
  }

  // Gauge: additive shift so that alpha vanishes at the first active index.
  if (m > 0) {
    const double shift = alpha[0];
    alpha.array() -= shift;
    beta.array() += shift;
  }

  TransportSolution solution;
  solution.alpha = Eigen::VectorXd::Zero(mu.size());
  solution.beta = Eigen::VectorXd::Zero(nu.size());
  for (int i = 0; i < m; ++i) solution.alpha[rows[i]] = alpha[i];
  for (int j = 0; j < n; ++j) solution.beta[cols[j]] = beta[j];
  solution.epsilon = config.epsilon;
  solution.converged = err <= tol;
  solution.iterations_used = iterations;
  solution.marginal_error = marginal_error(solution, cost, mu, nu);
  return solution;
}

Eigen::MatrixXd plan_density(const TransportSolution& solution, const CostMatrix& cost) {
  if (cost.rows() != solution.alpha.size() || cost.cols() != solution.beta.size())
    throw DimensionError("plan_density: cost shape does not match potentials");
  Eigen::MatrixXd g = -cost / solution.epsilon;
  g.array().colwise() += (solution.alpha / solution.epsilon).array();
  g.array().rowwise() += (solution.beta / solution.epsilon).transpose().array();
  return g.array().exp();
}

double marginal_error(const TransportSolution& solution, const CostMatrix& cost,
                      const Eigen::VectorXd& mu, const Eigen::VectorXd& nu) {
  if (cost.rows() != mu.size() || cost.cols() != nu.size() ||
      cost.rows() != solution.alpha.size() || cost.cols() != solution.beta.size())
    throw DimensionError("marginal_error: inconsistent shapes");
  const double eps = solution.epsilon;
  const Eigen::Index m = cost.rows(), n = cost.cols();

  // Scalar log-sum-exp loops; zero weights are skipped so the log never
  // sees them.
  double row_err = 0.0;
  for (Eigen::Index i = 0; i < m; ++i) {
    if (mu[i] <= 0.0) continue;
    double mx = -std::numeric_limits<double>::infinity();
    for (Eigen::Index j = 0; j < n; ++j) {
      if (nu[j] <= 0.0) continue;
      const double v = (-cost(i, j) + solution.alpha[i] + solution.beta[j]) / eps + std::log(nu[j]);
      mx = std::max(mx, v);
    }
    double acc = 0.0;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (nu[j] <= 0.0) continue;
      const double v = (-cost(i, j) + solution.alpha[i] + solution.beta[j]) / eps + std::log(nu[j]);
      acc += std::exp(v - mx);
    }
    row_err += mu[i] * std::abs(std::exp(mx) * acc - 1.0);
  }
  double col_err = 0.0;
  for (Eigen::Index j = 0; j < n; ++j) {
    if (nu[j] <= 0.0) continue;
    double mx = -std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < m; ++i) {
      if (mu[i] <= 0.0) continue;
      const double v = (-cost(i, j) + solution.alpha[i] + solution.beta[j]) / eps + std::log(mu[i]);
      mx = std::max(mx, v);
    }
    double acc = 0.0;
    for (Eigen::Index i = 0; i < m; ++i) {
      if (mu[i] <= 0.0) continue;
      const double v = (-cost(i, j) + solution.alpha[i] + solution.beta[j]) / eps + std::log(mu[i]);
      acc += std::exp(v - mx);
    }
    col_err += nu[j] * std::abs(std::exp(mx) * acc - 1.0);
  }
  return std::max(row_err, col_err);
}

}  // namespace etop
