#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "commands.hpp"

namespace {

using etop::cli::RunConfig;

void add_common_options(CLI::App* cmd, RunConfig& config) {
  cmd->option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  cmd->add_option("--system", config.system,
                  "Dynamical system: shift | lorenz | delay-file | three-state");
  cmd->add_option("--d", config.dim, "Torus dimension (shift)");
  cmd->add_option("--theta", config.theta, "Shift vector, comma separated")
      ->delimiter(',')
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  cmd->add_option("--n", config.n, "Lattice points per axis (shift) / sample count (lorenz)");
  cmd->add_option("--sampling", config.sampling, "Shift sampling: lattice | random");
  cmd->add_option("--tau", config.tau, "Lorenz flow time per map application");
  cmd->add_option("--rk4-step", config.rk4_step, "Fixed RK4 step (must divide tau)");
  cmd->add_option("--t-burn", config.t_burn, "Lorenz burn-in time");
  cmd->add_option("--t-end", config.t_end, "Lorenz trajectory end time");
  cmd->add_option("--input", config.input, "Trajectory file (delay-file)");
  cmd->add_option("--format", config.format, "Trajectory format: csv | raw-f64");
  cmd->add_option("--lag", config.lag, "Delay-map lag in frames");
  cmd->add_option("--stride", config.stride, "Delay-map subsampling stride");
  cmd->add_option("--p1", config.p1, "Three-state fast transition probability");
  cmd->add_option("--p2", config.p2, "Three-state slow transition probability");
  cmd->add_option("--d1", config.d1, "Three-state near distance");
  cmd->add_option("--d2", config.d2, "Three-state far distance");
  cmd->add_option("--method", config.method,
                  "Operator: entropic | normalized-gaussian | edmd | diffusion-map");
  cmd->add_option("--eps", config.eps,
                  "Epsilon grid: comma list or logspace:a:b:k (10^a .. 10^b, k points)");
  cmd->add_option("--sinkhorn-tol", config.sinkhorn_tol, "Sinkhorn L1 marginal tolerance");
  cmd->add_option("--max-iterations", config.max_iterations, "Sinkhorn iterations per level");
  cmd->add_option("--sigma", config.sigma, "EDMD ridge regularization");
  cmd->add_option("--top-k", config.top_k, "Eigenvalues to report");
  cmd->add_option("--eig-tol", config.eig_tol, "Eigenpair residual tolerance");
  cmd->add_option("--eig-method", config.eig_method, "auto | dense | arnoldi");
  cmd->add_option("--imag-tol", config.imag_tol, "Relative threshold for calling an eigenvalue real");
  cmd->add_option("--k", config.k, "k-means cluster count (cluster)");
  cmd->add_option("--evecs", config.evecs, "Eigenvectors used for clustering");
  cmd->add_option("--min-eig", config.min_real_eig, "Smallest usable real eigenvalue (cluster)");
  cmd->add_option("--q-max", config.q_max, "Largest denominator for rational approximations");
  cmd->add_option("--out", config.out, "Output directory");
  cmd->add_flag("--json", config.json, "Also write JSON mirrors of every CSV");
  cmd->add_option("--seed", config.seed, "Seed for sampling / k-means / Arnoldi start");
}

// Pulls --config FILE out of argv and splices the file's key=value pairs as
// options right after the subcommand, so explicit flags override the file.
std::vector<std::string> preprocess_args(int argc, char** argv, std::string& config_path) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--config") {
      if (i + 1 >= argc) throw etop::ConfigError("--config needs a file path");
      config_path = argv[++i];
    } else if (arg.rfind("--config=", 0) == 0) {
      config_path = arg.substr(9);
    } else {
      args.push_back(arg);
    }
  }
  if (config_path.empty()) return args;
  if (args.empty() || args[0].empty() || args[0][0] == '-')
    throw etop::ConfigError("--config requires a subcommand");
  std::vector<std::string> spliced;
  spliced.push_back(args[0]);
  for (const auto& [key, value] : etop::cli::parse_config_file(config_path))
    spliced.push_back("--" + key + "=" + value);
  for (std::size_t i = 1; i < args.size(); ++i) spliced.push_back(args[i]);
  return spliced;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "etop - entropic transfer operators: build Markov operators from "
      "trajectory data by entropic optimal transport and analyze their spectra"};
  app.require_subcommand(1);

  RunConfig config;
  int (*run)(const RunConfig&) = nullptr;
  const auto wire = [&](const char* name, const char* help, int (*fn)(const RunConfig&)) {
    CLI::App* cmd = app.add_subcommand(name, help);
    add_common_options(cmd, config);
    cmd->callback([&run, fn] { run = fn; });
    return cmd;
  };
  wire("spectrum", "Eigenvalue scatter per epsilon (spectrum.csv/.svg)", etop::cli::cmd_spectrum);
  wire("sweep", "Dominant real eigenvalues vs epsilon (sweep.csv/.svg)", etop::cli::cmd_sweep);
  wire("oracle", "Compare the solver against the shift-map closed forms (oracle.csv, rationals.csv)",
       etop::cli::cmd_oracle);
  wire("cluster", "Metastable decomposition from dominant eigenvectors (clusters.csv, splits.csv)",
       etop::cli::cmd_cluster);
  wire("baseline", "Side-by-side spectra of a comparison operator construction (baseline.csv)",
       etop::cli::cmd_baseline);

  try {
    std::string config_path;
    const std::vector<std::string> args = preprocess_args(argc, argv, config_path);
    // CLI11 parses reversed argv.
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
    return run(config);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);  // prints the message and usage hint
    return 1;
  } catch (const etop::cli::NoStructureError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const etop::ConvergenceError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 2;
  } catch (const etop::NumericsError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 2;
  } catch (const etop::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
