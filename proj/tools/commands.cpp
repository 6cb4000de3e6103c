#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>

#include <etop/analysis.hpp>
#include <etop/baselines.hpp>
#include <etop/spectral.hpp>
#include <etop/transfer.hpp>

#include "svg.hpp"
#include "table.hpp"

namespace etop::cli {

namespace {

SinkhornConfig sinkhorn_config_from(const RunConfig& config) {
  SinkhornConfig sk;
  sk.marginal_tolerance = config.sinkhorn_tol;
  sk.max_iterations = config.max_iterations;
  return sk;
}

EigenOptions eigen_options_from(const RunConfig& config) {
  EigenOptions opts;
  if (config.eig_method == "dense")
    opts.method = EigenOptions::Method::Dense;
  else if (config.eig_method == "arnoldi")
    opts.method = EigenOptions::Method::Arnoldi;
  else if (config.eig_method == "auto")
    opts.method = EigenOptions::Method::Auto;
  else
    throw ConfigError("unknown --eig-method '" + config.eig_method + "'");
  opts.seed = config.seed;
  return opts;
}

ThreeStateModel three_state_from(const RunConfig& config) {
  ThreeStateModel model;
  model.p1 = config.p1;
  model.p2 = config.p2;
  model.d1 = config.d1;
  model.d2 = config.d2;
  model.validate();
  return model;
}

/// Operator for one epsilon under the configured method, suitable for
/// spectral analysis. Orientation differs between methods but spectra do not.
Eigen::MatrixXd build_operator(const RunConfig& config, const SampledInstance& instance,
                               double eps) {
  if (config.method == "entropic")
    return build_entropic_transfer(instance.cloud, instance.images, eps, instance.metric,
                                   sinkhorn_config_from(config))
        .gamma;
  if (config.method == "normalized-gaussian")
    return normalized_gaussian_transfer(instance.cloud, instance.images, eps, instance.metric);
  if (config.method == "diffusion-map")
    return diffusion_map_operator(instance.cloud, eps, instance.metric);
  if (config.method == "edmd")
    return edmd_matrices(instance.cloud, instance.images, eps, config.sigma).koopman;
  throw ConfigError("unknown method '" + config.method + "'");
}

std::filesystem::path ensure_out_dir(const RunConfig& config) {
  std::filesystem::path dir(config.out);
  std::filesystem::create_directories(dir);
  return dir;
}

bool is_real(const std::complex<double>& lambda, double imag_tol) {
  return std::abs(lambda.imag()) <= imag_tol * std::abs(lambda);
}

}  // namespace

int cmd_spectrum(const RunConfig& config) {
  std::vector<double> grid = parse_eps_grid(config.eps);
  std::sort(grid.begin(), grid.end());
  const auto dir = ensure_out_dir(config);
  const bool three_state = config.system == "three-state";
  SampledInstance instance;
  if (!three_state) instance = build_instance(config);
  const ThreeStateModel model = three_state ? three_state_from(config) : ThreeStateModel{};

  Table table({"epsilon", "index", "re", "im", "modulus", "residual"});
  std::vector<SpectrumPanel> panels;
  for (const double eps : grid) {
    const Eigen::MatrixXd op = three_state
                                   ? Eigen::MatrixXd(three_state_transfer(
                                         model, eps, sinkhorn_config_from(config)))
                                   : build_operator(config, instance, eps);
    const int k = std::min<int>(config.top_k, static_cast<int>(op.rows()));
    SpectrumReport report = eigendecompose(op, k, config.eig_tol, eigen_options_from(config));
    report.epsilon = eps;
    SpectrumPanel panel;
    panel.epsilon = eps;
    for (int i = 0; i < report.eigenvalues.size(); ++i) {
      const auto lambda = report.eigenvalues[i];
      table.add_row({eps, static_cast<long long>(i), lambda.real(), lambda.imag(),
                     std::abs(lambda), report.residuals.size() ? report.residuals[i] : 0.0});
      panel.eigenvalues.push_back(lambda);
    }
    panels.push_back(std::move(panel));
  }
  table.write_csv((dir / "spectrum.csv").string());
  write_file_atomic((dir / "spectrum.svg").string(), svg_spectrum_panels(panels));
  if (config.json) table.write_json((dir / "spectrum.json").string());
  std::cout << "spectrum: " << table.rows() << " eigenvalues across " << grid.size()
            << " epsilon values -> " << (dir / "spectrum.csv").string() << "\n";
  return 0;
}

int cmd_sweep(const RunConfig& config) {
  const std::vector<double> grid = parse_eps_grid(config.eps);
  if (grid.size() < 2) throw ConfigError("sweep needs at least 2 epsilon grid points");
  const auto dir = ensure_out_dir(config);
  const bool three_state = config.system == "three-state";
  SampledInstance instance;
  if (!three_state) instance = build_instance(config);
  const ThreeStateModel model = three_state ? three_state_from(config) : ThreeStateModel{};

  const auto builder = [&](double eps) -> Eigen::MatrixXd {
    return three_state ? Eigen::MatrixXd(three_state_transfer(model, eps,
                                                              sinkhorn_config_from(config)))
                       : build_operator(config, instance, eps);
  };
  const auto rows = epsilon_sweep(builder, grid, config.top_k, config.eig_tol,
                                  eigen_options_from(config), config.imag_tol);

  Table table({"epsilon", "rank", "real_eig", "status"});
  std::vector<std::vector<SweepCurvePoint>> curves(config.top_k);
  for (const auto& row : rows) {
    if (!row.ok) {
      table.add_row({row.epsilon, static_cast<long long>(0), std::string(""), row.message});
      continue;
    }
    for (std::size_t r = 0; r < row.real_eigs.size(); ++r) {
      table.add_row({row.epsilon, static_cast<long long>(r), row.real_eigs[r],
                     std::string("ok")});
      if (r < curves.size()) curves[r].push_back({row.epsilon, row.real_eigs[r]});
    }
  }
  table.write_csv((dir / "sweep.csv").string());
  write_file_atomic((dir / "sweep.svg").string(), svg_sweep_curves(curves));
  if (config.json) table.write_json((dir / "sweep.json").string());
  const auto failed = std::count_if(rows.begin(), rows.end(),
                                    [](const SweepRow& r) { return !r.ok; });
  std::cout << "sweep: " << rows.size() << " epsilon values (" << failed << " failed) -> "
            << (dir / "sweep.csv").string() << "\n";
  return 0;
}

int cmd_oracle(const RunConfig& config) {
  if (config.system != "shift") throw ConfigError("oracle supports --system shift only");
  if (config.dim != 1) throw ConfigError("oracle supports d = 1 only");
  if (config.sampling != "lattice")
    throw ConfigError("oracle compares against the lattice discretization; use lattice sampling");
  const std::vector<double> grid = parse_eps_grid(config.eps);
  const auto dir = ensure_out_dir(config);
  const SampledInstance instance = build_instance(config);
  const ShiftMapSpec spec = instance.shift;
  const int n = spec.lattice_n;

  Table table({"epsilon", "k", "solver_re", "solver_im", "oracle_re", "oracle_im", "approx_re",
               "approx_im", "solver_vs_oracle", "oracle_vs_approx"});
  for (const double eps : grid) {
    const TransferMatrix t = build_entropic_transfer(instance.cloud, instance.images, eps,
                                                     instance.metric,
                                                     sinkhorn_config_from(config));
    EigenOptions opts = eigen_options_from(config);
    opts.method = EigenOptions::Method::Dense;
    const SpectrumReport report = eigendecompose(t.gamma, n, config.eig_tol, opts);
    for (int k = -(n - 1) / 2; k <= n / 2; ++k) {
      const Eigen::VectorXi freq = Eigen::VectorXi::Constant(1, k);
      const auto oracle = discrete_exact_eig(spec, freq, eps);
      const auto approx = regularized_approx_eig(spec, freq, eps);
      double best = std::numeric_limits<double>::infinity();
      std::complex<double> solver(0.0, 0.0);
      for (int i = 0; i < report.eigenvalues.size(); ++i) {
        const double dist = std::abs(report.eigenvalues[i] - oracle);
        if (dist < best) {
          best = dist;
          solver = report.eigenvalues[i];
        }
      }
      table.add_row({eps, static_cast<long long>(k), solver.real(), solver.imag(), oracle.real(),
                     oracle.imag(), approx.real(), approx.imag(), best,
                     std::abs(oracle - approx)});
    }
  }
  table.write_csv((dir / "oracle.csv").string());
  if (config.json) table.write_json((dir / "oracle.json").string());

  Table rationals({"p", "q", "delta", "c", "visibility_threshold", "kind"});
  const auto approx_table = rational_approximations(spec.theta[0], config.q_max);
  for (const auto& a : approx_table.approximations)
    rationals.add_row({static_cast<long long>(a.p), static_cast<long long>(a.q), a.delta, a.c,
                       visibility_threshold(a.q), std::string("approx")});
  if (approx_table.exact)
    rationals.add_row({static_cast<long long>(approx_table.exact->p),
                       static_cast<long long>(approx_table.exact->q), approx_table.exact->delta,
                       approx_table.exact->c, visibility_threshold(approx_table.exact->q),
                       std::string("exact")});
  rationals.write_csv((dir / "rationals.csv").string());
  if (config.json) rationals.write_json((dir / "rationals.json").string());

  std::cout << "oracle: " << table.rows() << " frequency rows, " << rationals.rows()
            << " rational approximations -> " << (dir / "oracle.csv").string() << "\n";
  return 0;
}

int cmd_cluster(const RunConfig& config) {
  if (config.method != "entropic")
    throw ConfigError("cluster works on the entropic transfer matrix; use --method entropic");
  const std::vector<double> grid = parse_eps_grid(config.eps);
  if (grid.size() != 1) throw ConfigError("cluster expects a single --eps value");
  const double eps = grid[0];
  const auto dir = ensure_out_dir(config);
  const SampledInstance instance = build_instance(config);

  const TransferMatrix t = build_entropic_transfer(instance.cloud, instance.images, eps,
                                                   instance.metric, sinkhorn_config_from(config));
  const int k = std::min<int>(std::max(config.top_k, config.evecs + 2),
                              static_cast<int>(t.gamma.rows()));
  const SpectrumReport report = eigendecompose(t.gamma, k, config.eig_tol,
                                               eigen_options_from(config));
  const auto reals = dominant_real_eigs(report, config.evecs + 1, config.imag_tol);

  // The leading real eigenvalue is the trivial lambda = 1 with the constant
  // eigenvector; structure lives in the following ones.
  std::vector<RealEig> usable;
  for (std::size_t i = 1; i < reals.size(); ++i)
    if (reals[i].value.real() >= config.min_real_eig) usable.push_back(reals[i]);
  if (usable.empty())
    throw NoStructureError("no nontrivial real eigenvalue above " +
                           std::to_string(config.min_real_eig) +
                           "; largest candidates: " +
                           (reals.size() > 1 ? format_double(reals[1].value.real())
                                             : std::string("none")));
  if (static_cast<int>(usable.size()) > config.evecs) usable.resize(config.evecs);

  const int n = t.size();
  Eigen::MatrixXd coords(n, usable.size());
  for (std::size_t c = 0; c < usable.size(); ++c)
    coords.col(c) = report.eigenvectors.col(usable[c].index).real();

  const KMeansResult clusters = kmeans(coords, config.k, config.seed);

  Table table([&] {
    std::vector<std::string> header{"index"};
    for (int c = 0; c < instance.cloud.dim(); ++c) header.push_back("x" + std::to_string(c));
    header.push_back("label");
    for (std::size_t c = 0; c < usable.size(); ++c) header.push_back("v" + std::to_string(c + 1));
    return header;
  }());
  for (int i = 0; i < n; ++i) {
    std::vector<Table::Cell> row{static_cast<long long>(i)};
    for (int c = 0; c < instance.cloud.dim(); ++c) row.push_back(instance.cloud.points(i, c));
    row.push_back(static_cast<long long>(clusters.partition.labels[i]));
    for (Eigen::Index c = 0; c < coords.cols(); ++c) row.push_back(coords(i, c));
    table.add_row(std::move(row));
  }
  table.write_csv((dir / "clusters.csv").string());
  if (config.json) table.write_json((dir / "clusters.json").string());

  // Two-set splits per used eigenvector with their internal transition
  // probabilities.
  Table splits({"eigenvector", "eigenvalue", "set", "size", "weight_fraction",
                "internal_transition_probability"});
  for (std::size_t c = 0; c < usable.size(); ++c) {
    const Partition split = sign_split(coords.col(c));
    for (int side = 0; side < 2; ++side) {
      const auto idx = cluster_indices(split, side);
      double weight = 0.0;
      for (int i : idx) weight += t.weights[i];
      splits.add_row({static_cast<long long>(c + 1), usable[c].value.real(),
                      std::string(side == 0 ? "positive" : "negative"),
                      static_cast<long long>(idx.size()), weight,
                      internal_transition_probability(t, idx)});
    }
  }
  splits.write_csv((dir / "splits.csv").string());
  if (config.json) splits.write_json((dir / "splits.json").string());

  std::cout << "cluster: " << usable.size() << " eigenvectors, k = " << config.k << " -> "
            << (dir / "clusters.csv").string() << "\n";
  return 0;
}

int cmd_baseline(const RunConfig& config) {
  if (config.method == "entropic")
    throw ConfigError(
        "baseline compares a non-entropic method against the entropic operator; pick "
        "--method normalized-gaussian | edmd | diffusion-map");
  const std::vector<double> grid = parse_eps_grid(config.eps);
  const auto dir = ensure_out_dir(config);
  const SampledInstance instance = build_instance(config);

  Table table({"epsilon", "method", "index", "re", "im", "modulus"});
  Table invariance({"epsilon", "method", "row_sum_max_dev", "left_fixed_l1_dev"});
  for (const double eps : grid) {
    for (const std::string method : {std::string("entropic"), config.method}) {
      RunConfig sub = config;
      sub.method = method;
      const Eigen::MatrixXd op = build_operator(sub, instance, eps);
      const double row_dev = (op.rowwise().sum().array() - 1.0).abs().maxCoeff();
      const Eigen::VectorXd left = op.transpose() * instance.cloud.weights;
      const double left_dev = (left - instance.cloud.weights).cwiseAbs().sum();
      invariance.add_row({eps, method, row_dev, left_dev});
      const int k = std::min<int>(config.top_k, static_cast<int>(op.rows()));
      EigenOptions opts = eigen_options_from(config);
      opts.compute_vectors = true;
      const SpectrumReport report = eigendecompose(op, k, config.eig_tol, opts);
      for (int i = 0; i < report.eigenvalues.size(); ++i)
        table.add_row({eps, method, static_cast<long long>(i), report.eigenvalues[i].real(),
                       report.eigenvalues[i].imag(), std::abs(report.eigenvalues[i])});
    }
  }
  table.write_csv((dir / "baseline.csv").string());
  invariance.write_csv((dir / "invariance.csv").string());
  if (config.json) {
    table.write_json((dir / "baseline.json").string());
    invariance.write_json((dir / "invariance.json").string());
  }
  std::cout << "baseline: " << config.method << " vs entropic across " << grid.size()
            << " epsilon values -> " << (dir / "baseline.csv").string() << "\n";
  return 0;
}

}  // namespace etop::cli
