#include "etop/torus_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace etop {

namespace {

constexpr double kPi = std::numbers::pi;

void validate_frequency(const ShiftMapSpec& spec, const Eigen::VectorXi& k) {
  if (k.size() != spec.dim) throw DimensionError("frequency vector length != dim");
}

// 16-point Gauss-Legendre nodes/weights on [-1, 1] (positive half; the rule
// is symmetric).
constexpr int kGlOrder = 16;
constexpr double kGlNode[8] = {
    0.0950125098376374, 0.2816035507792589, 0.4580167776572274, 0.6178762444026438,
    0.7554044083550030, 0.8656312023878318, 0.9445750230732326, 0.9894009349916499};
constexpr double kGlWeight[8] = {
    0.1894506104550685, 0.1826034150449236, 0.1691565193950025, 0.1495959888165767,
    0.1246289712555339, 0.0951585116824928, 0.0622535239386479, 0.0271524594117541};

// Composite 16-point Gauss-Legendre over [lo, hi] with at least min_nodes
// total nodes.
template <typename F>
double composite_gl(F&& f, double lo, double hi, int min_nodes) {
  const int panels = std::max(1, (min_nodes + kGlOrder - 1) / kGlOrder);
  const double width = (hi - lo) / panels;
  double total = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double center = lo + (p + 0.5) * width;
    const double half = 0.5 * width;
    double acc = 0.0;
    for (int i = 0; i < 8; ++i)
      acc += kGlWeight[i] * (f(center - half * kGlNode[i]) + f(center + half * kGlNode[i]));
    total += half * acc;
  }
  return total;
}

}  // namespace

std::complex<double> exact_unregularized_eig(const ShiftMapSpec& spec, const Eigen::VectorXi& k) {
  spec.validate();
  validate_frequency(spec, k);
  const double phase = -2.0 * kPi * k.cast<double>().dot(spec.theta);
  return std::polar(1.0, phase);
}

std::complex<double> regularized_approx_eig(const ShiftMapSpec& spec, const Eigen::VectorXi& k,
                                            double epsilon) {
  if (!(epsilon > 0.0)) throw ConfigError("regularized_approx_eig: epsilon must be positive");
  const double damping = std::exp(-kPi * kPi * epsilon * k.cast<double>().squaredNorm());
  return damping * exact_unregularized_eig(spec, k);
}

std::complex<double> discrete_exact_eig(const ShiftMapSpec& spec, const Eigen::VectorXi& k,
                                        double epsilon) {
  spec.validate();
  validate_frequency(spec, k);
  if (!(epsilon > 0.0)) throw ConfigError("discrete_exact_eig: epsilon must be positive");
  const int n = spec.lattice_n;
  for (int c = 0; c < spec.dim; ++c) {
    // k in J_N: each component in (-n/2, n/2], checked in exact integers.
    if (!(2 * k[c] > -n && 2 * k[c] <= n))
      throw ConfigError("discrete_exact_eig: frequency outside J_N (aliasing)");
  }

  // Per-axis index range of J_{N,theta} = { j : j/n + theta in (-1/2, 1/2] }.
  // The set is a translate of J_N, so it has exactly n members per axis;
  // deriving j_min from j_max keeps the count right under rounding.
  std::vector<long long> j_max(spec.dim), j_min(spec.dim);
  for (int c = 0; c < spec.dim; ++c) {
    j_max[c] = static_cast<long long>(std::floor(0.5 * n - n * spec.theta[c]));
    j_min[c] = j_max[c] - n + 1;
  }

  std::complex<double> numerator(0.0, 0.0);
  double denominator = 0.0;
  std::vector<long long> j(spec.dim);
  for (int c = 0; c < spec.dim; ++c) j[c] = j_min[c];
  while (true) {
    double sq = 0.0;
    double phase = 0.0;
    for (int c = 0; c < spec.dim; ++c) {
      const double offset = static_cast<double>(j[c]) / n + spec.theta[c];
      sq += offset * offset;
      phase += static_cast<double>(k[c]) * static_cast<double>(j[c]);
    }
    const double weight = std::exp(-sq / epsilon);
    numerator += weight * std::polar(1.0, 2.0 * kPi * phase / n);
    denominator += weight;

    int axis = 0;
    while (axis < spec.dim && ++j[axis] > j_max[axis]) {
      j[axis] = j_min[axis];
      ++axis;
    }
    if (axis == spec.dim) break;
  }
  return numerator / denominator;
}

EigBoundCheck check_regularized_eig_bound(const ShiftMapSpec& spec, int k, double epsilon,
                                          int quadrature_points) {
  spec.validate();
  if (spec.dim != 1)
    throw ConfigError("check_regularized_eig_bound: quadrature path supports d = 1 only");
  const double eps_limit = 1.0 / (8.0 * (spec.dim + 2) * std::log(2.0));
  if (!(epsilon > 0.0 && epsilon < eps_limit))
    throw ConfigError("check_regularized_eig_bound: epsilon outside validity range (0, " +
                      std::to_string(eps_limit) + ")");

  const double a = 0.5 / std::sqrt(epsilon);  // half-width of the scaled domain
  const double tau = std::sqrt(epsilon) * kPi * k;
  const int nodes =
      std::max(quadrature_points, 64 * static_cast<int>(std::ceil(1.0 / std::sqrt(epsilon))));

  // I_k = int_{-a}^{a} exp(-(z - i tau)^2) dz, split into real and imaginary
  // parts. The imaginary part vanishes by symmetry and is kept as a
  // quadrature sanity term.
  const auto integrand_re = [tau](double z) {
    return std::exp(tau * tau - z * z) * std::cos(2.0 * tau * z);
  };
  const auto integrand_im = [tau](double z) {
    return std::exp(tau * tau - z * z) * std::sin(2.0 * tau * z);
  };
  const double ik_re = composite_gl(integrand_re, -a, a, nodes);
  const double ik_im = composite_gl(integrand_im, -a, a, nodes);
  const double i0 = composite_gl([](double z) { return std::exp(-z * z); }, -a, a, nodes);

  const double damping = std::exp(-kPi * kPi * epsilon * k * k);
  Eigen::VectorXi freq(1);
  freq[0] = k;
  const std::complex<double> lambda_quad = std::complex<double>(ik_re, ik_im) / i0 * damping *
                                           exact_unregularized_eig(spec, freq);

  // lhs = damping * |I_k - I_0| / I_0 with I_k - I_0 = tail(0) - tail(tau),
  // tail(t) = int_{|z|>a} exp(-(z - i t)^2) dz
  //         = 2 exp(t^2 - a^2) int_0^inf exp(-2 a u - u^2) cos(2 (a+u) t) du.
  // Factoring out exp(t^2 - a^2) keeps the value representable down to
  // ~1e-300 even though both raw integrals equal sqrt(pi) to machine
  // precision.
  const auto scaled_tail = [a, nodes](double t) {
    const double log_scale = t * t - a * a;
    if (log_scale < -700.0) return 0.0;  // below double range; tail is 0
    const double u_max = -a + std::sqrt(a * a + 60.0);
    const double integral = composite_gl(
        [a, t](double u) { return std::exp(-2.0 * a * u - u * u) * std::cos(2.0 * (a + u) * t); },
        0.0, u_max, std::max(nodes / 4, 256));
    return 2.0 * std::exp(log_scale) * integral;
  };

  EigBoundCheck check;
  check.lambda_quadrature = lambda_quad;
  check.lhs = damping * std::abs(scaled_tail(0.0) - scaled_tail(tau)) / i0;
  check.rhs = std::pow(2.0, spec.dim + 1) * std::exp(-1.0 / (8.0 * epsilon));
  check.holds = check.lhs <= check.rhs;
  return check;
}

RationalApproxTable rational_approximations(double theta, long long q_max) {
  if (q_max < 1) throw ConfigError("rational_approximations: q_max must be >= 1");
  if (!std::isfinite(theta)) throw ConfigError("rational_approximations: theta not finite");

  // Continued fraction of the dyadic rational P / 2^62 closest to theta,
  // expanded with exact integer arithmetic.
  const long long denom_pow = 62;
  const __int128 big_q = static_cast<__int128>(1) << denom_pow;
  __int128 p = static_cast<__int128>(std::llround(std::ldexp(theta, denom_pow)));
  __int128 q = big_q;

  __int128 h_prev = 1, h_prev2 = 0;  // convergent numerators
  __int128 k_prev = 0, k_prev2 = 1;  // convergent denominators

  RationalApproxTable table;
  while (q != 0) {
    __int128 a = p / q;
    if (p % q != 0 && ((p < 0) != (q < 0))) --a;  // floor division
    const __int128 h = a * h_prev + h_prev2;
    const __int128 k = a * k_prev + k_prev2;
    if (k > q_max) break;
    if (k >= 1) {
      RationalApprox approx;
      approx.p = static_cast<long long>(h);
      approx.q = static_cast<long long>(k);
      approx.delta = theta - static_cast<double>(approx.p) / static_cast<double>(approx.q);
      approx.c = static_cast<double>(approx.q) * static_cast<double>(approx.q) *
                 std::abs(approx.delta);
      if (approx.delta == 0.0)
        table.exact = approx;
      else if (approx.c < 1.0)
        table.approximations.push_back(approx);
    }
    const __int128 r = p - a * q;
    p = q;
    q = r;
    h_prev2 = h_prev;
    h_prev = h;
    k_prev2 = k_prev;
    k_prev = k;
  }
  std::sort(table.approximations.begin(), table.approximations.end(),
            [](const RationalApprox& x, const RationalApprox& y) { return x.c < y.c; });
  return table;
}

double visibility_threshold(long long q) {
  if (q < 1) throw ConfigError("visibility_threshold: q must be >= 1");
  return 1.0 / (kPi * q * kPi * q);
}

}  // namespace etop
