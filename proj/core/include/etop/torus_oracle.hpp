#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "etop/shift_map.hpp"

namespace etop {

/// Closed-form reference results for the torus shift map. These are computed
/// by direct summation/quadrature of explicit formulas and serve as an
/// independent check on the Sinkhorn + eigensolver pipeline.

/// Eigenvalue of the unregularized transfer operator for frequency k:
/// exp(-2*pi*i k.theta).
std::complex<double> exact_unregularized_eig(const ShiftMapSpec& spec, const Eigen::VectorXi& k);

/// Closed-form approximation of the regularized eigenvalue:
/// exp(-pi^2 eps |k|^2) * exp(-2*pi*i k.theta). Its modulus is independent of
/// theta.
std::complex<double> regularized_approx_eig(const ShiftMapSpec& spec, const Eigen::VectorXi& k,
                                            double epsilon);

/// Exact eigenvalue of the lattice-discretized entropic transfer matrix,
/// evaluated as the finite Fourier-weighted Gaussian sum over the index set
/// J_{N,theta} = { j : j/n + theta in (-1/2, 1/2]^d }, normalized so k = 0
/// gives exactly 1. Requires k in J_N = { k : k/n in (-1/2, 1/2]^d };
/// frequencies outside alias and are rejected.
std::complex<double> discrete_exact_eig(const ShiftMapSpec& spec, const Eigen::VectorXi& k,
                                        double epsilon);

/// Result of the continuum eigenvalue bound check (d = 1 only).
struct EigBoundCheck {
  std::complex<double> lambda_quadrature;  // regularized eigenvalue by quadrature
  double lhs = 0.0;                        // |lambda^eps_k - exp(-pi^2 eps k^2) lambda_k|
  double rhs = 0.0;                        // 2^(d+1) exp(-1/(8 eps))
  bool holds = false;
};

/// Computes the continuum regularized eigenvalue via composite Gauss-Legendre
/// quadrature of its finite-interval Gaussian integral representation and
/// checks it against the explicit tail bound. The difference on the lhs is
/// evaluated through the algebraically identical boundary-tail integrals,
/// which survive floating point where direct subtraction would drown in
/// rounding noise (the true difference can be ~1e-54).
///
/// quadrature_points = 0 picks 64 * ceil(eps^-1/2) nodes. Throws ConfigError
/// for d != 1 or epsilon outside (0, 1/(8(d+2)ln2)).
EigBoundCheck check_regularized_eig_bound(const ShiftMapSpec& spec, int k, double epsilon,
                                          int quadrature_points = 0);

/// Continued-fraction convergent p/q of theta with the approximation residual
/// delta = theta - p/q and quality c = q^2 |delta| in (0,1).
struct RationalApprox {
  long long p = 0;
  long long q = 1;
  double delta = 0.0;
  double c = 0.0;
};

struct RationalApproxTable {
  std::vector<RationalApprox> approximations;  // c in (0,1), ascending c
  std::optional<RationalApprox> exact;         // present when theta is a convergent exactly
};

/// All continued-fraction convergents of theta with q <= q_max, computed with
/// exact integer arithmetic on a 2^-62-accurate rational representation of
/// theta. Convergents whose residual vanishes in double precision are
/// reported separately as exact.
RationalApproxTable rational_approximations(double theta, long long q_max);

/// Epsilon below which an approximate q-cycle of the shift map stays visible
/// in the regularized spectrum: (pi q)^-2.
double visibility_threshold(long long q);

}  // namespace etop
