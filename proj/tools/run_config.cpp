#include "run_config.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>

#include <etop/trajectory_io.hpp>

namespace etop::cli {

namespace {

double parse_double(const std::string& s, const std::string& what) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str() || *end != '\0' || !std::isfinite(v))
    throw ConfigError("cannot parse " + what + " from '" + s + "'");
  return v;
}

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

}  // namespace

std::vector<double> parse_eps_grid(const std::string& spec) {
  if (spec.empty()) throw ConfigError("empty --eps grid");
  std::vector<double> grid;
  if (spec.rfind("logspace:", 0) == 0) {
    const std::string body = spec.substr(9);
    const auto c1 = body.find(':');
    const auto c2 = body.find(':', c1 == std::string::npos ? c1 : c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos)
      throw ConfigError("--eps logspace wants logspace:a:b:k");
    const double a = parse_double(body.substr(0, c1), "logspace start exponent");
    const double b = parse_double(body.substr(c1 + 1, c2 - c1 - 1), "logspace end exponent");
    const long count = std::lround(parse_double(body.substr(c2 + 1), "logspace count"));
    if (count < 2) throw ConfigError("logspace count must be >= 2");
    for (long i = 0; i < count; ++i)
      grid.push_back(std::pow(10.0, a + (b - a) * i / (count - 1)));
  } else {
    std::size_t pos = 0;
    while (pos <= spec.size()) {
      const auto comma = spec.find(',', pos);
      const std::string tok =
          trim(comma == std::string::npos ? spec.substr(pos) : spec.substr(pos, comma - pos));
      if (!tok.empty()) grid.push_back(parse_double(tok, "epsilon"));
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
  }
  if (grid.empty()) throw ConfigError("empty --eps grid");
  for (double e : grid)
    if (!(e > 0.0)) throw ConfigError("epsilon values must be positive");
  return grid;
}

std::vector<std::pair<std::string, std::string>> parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  std::vector<std::pair<std::string, std::string>> pairs;
  std::string line;
  long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string text = trim(line);
    if (text.empty() || text[0] == '#') continue;
    if (text.front() == '[') {
      if (text.back() != ']')
        throw ConfigError(path + ":" + std::to_string(line_no) + ": unterminated section header");
      continue;  // sections are organizational only
    }
    const auto eq = text.find('=');
    if (eq == std::string::npos)
      throw ConfigError(path + ":" + std::to_string(line_no) + ": expected key = value");
    const std::string key = trim(text.substr(0, eq));
    const std::string value = trim(text.substr(eq + 1));
    if (key.empty())
      throw ConfigError(path + ":" + std::to_string(line_no) + ": empty key");
    pairs.emplace_back(key, value);
  }
  return pairs;
}

ShiftMapSpec shift_spec_from(const RunConfig& config) {
  ShiftMapSpec spec;
  spec.dim = config.dim;
  spec.theta = Eigen::Map<const Eigen::VectorXd>(config.theta.data(),
                                                 static_cast<Eigen::Index>(config.theta.size()));
  spec.lattice_n = config.n;
  spec.validate();
  return spec;
}

LorenzParams lorenz_params_from(const RunConfig& config) {
  LorenzParams params;
  params.tau = config.tau;
  params.rk4_step = config.rk4_step;
  params.validate();
  return params;
}

SampledInstance build_instance(const RunConfig& config) {
  if (config.system == "shift") {
    const ShiftMapSpec spec = shift_spec_from(config);
    WeightedPointCloud cloud;
    if (config.sampling == "lattice")
      cloud = lattice_cloud(spec);
    else if (config.sampling == "random")
      cloud = uniform_random_cloud(config.n, config.dim, config.seed);
    else
      throw ConfigError("unknown sampling '" + config.sampling + "' (lattice | random)");
    Eigen::MatrixXd images = shift_map(spec, cloud.points);
    return {std::move(cloud), std::move(images), Metric::torus(), spec};
  }
  if (config.system == "lorenz") {
    const LorenzParams params = lorenz_params_from(config);
    if (config.n < 2) throw ConfigError("lorenz needs --n >= 2 samples");
    DynamicalSample sample = lorenz_trajectory_cloud(params, {1.0, 1.0, 1.0}, config.t_burn,
                                                     config.t_end, config.n);
    return {std::move(sample.cloud), std::move(sample.images), Metric::euclidean(), {}};
  }
  if (config.system == "delay-file") {
    if (config.input.empty()) throw ConfigError("delay-file needs --input PATH");
    const TrajectoryDataset data =
        load_trajectory(config.input, trajectory_format_from_name(config.format));
    DynamicalSample sample = delay_map_dataset(data, config.lag, config.stride);
    return {std::move(sample.cloud), std::move(sample.images), Metric::euclidean(), {}};
  }
  if (config.system == "three-state")
    throw ConfigError("the three-state model has no point cloud; this command needs one");
  throw ConfigError("unknown system '" + config.system +
                    "' (shift | lorenz | delay-file | three-state)");
}

}  // namespace etop::cli
