#include "etop/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Eigenvalues>

#include "etop/rng.hpp"

namespace etop {

namespace {

// Modulus descending; ties by descending real part, then ascending imaginary
// part. Exact comparisons keep the order deterministic.
bool eig_less(const std::complex<double>& a, const std::complex<double>& b) {
  const double ma = std::abs(a), mb = std::abs(b);
  if (ma != mb) return ma > mb;
  if (a.real() != b.real()) return a.real() > b.real();
  return a.imag() < b.imag();
}

Eigen::VectorXcd apply_real(const Eigen::MatrixXd& a, const Eigen::VectorXcd& v) {
  return (a * v.real()).cast<std::complex<double>>() +
         std::complex<double>(0.0, 1.0) * (a * v.imag()).cast<std::complex<double>>();
}

// Largest-modulus entry made real positive, unit 2-norm. Ties resolve to the
// lowest index.
void fix_phase(Eigen::Ref<Eigen::VectorXcd> v) {
  Eigen::Index pivot = 0;
  double best = -1.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double m = std::abs(v[i]);
    if (m > best) {
      best = m;
      pivot = i;
    }
  }
  if (best > 0.0) v *= std::conj(v[pivot]) / best;
  const double norm = v.norm();
  if (norm > 0.0) v /= norm;
}

struct RankedPairs {
  Eigen::VectorXcd values;
  Eigen::MatrixXcd vectors;
};

// Sort all eigenpairs of a dense solve and keep the leading top_k.
RankedPairs rank_pairs(const Eigen::VectorXcd& values, const Eigen::MatrixXcd& vectors,
                       int top_k, bool with_vectors) {
  std::vector<int> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int i, int j) { return eig_less(values[i], values[j]); });
  RankedPairs out;
  out.values.resize(top_k);
  if (with_vectors) out.vectors.resize(vectors.rows(), top_k);
  for (int r = 0; r < top_k; ++r) {
    out.values[r] = values[order[r]];
    if (with_vectors) out.vectors.col(r) = vectors.col(order[r]);
  }
  return out;
}

SpectrumReport finalize_report(const Eigen::MatrixXd& matrix, RankedPairs pairs,
                               double tolerance) {
  SpectrumReport report;
  report.n_points = static_cast<int>(matrix.rows());
  report.eigenvalues = std::move(pairs.values);
  report.eigenvectors = std::move(pairs.vectors);
  if (report.eigenvectors.cols() == report.eigenvalues.size()) {
    const int k = static_cast<int>(report.eigenvalues.size());
    report.residuals.resize(k);
    int converged = 0;
    for (int c = 0; c < k; ++c) {
      fix_phase(report.eigenvectors.col(c));
      const Eigen::VectorXcd v = report.eigenvectors.col(c);
      report.residuals[c] = (apply_real(matrix, v) - report.eigenvalues[c] * v).norm();
      if (report.residuals[c] <= tolerance) ++converged;
    }
    if (converged < k)
      throw ConvergenceError("eigendecompose: " + std::to_string(converged) + " of " +
                                 std::to_string(k) + " pairs reached residual tolerance",
                             report.residuals.maxCoeff(), converged);
  }
  return report;
}

SpectrumReport dense_eigendecompose(const Eigen::MatrixXd& matrix, int top_k, double tolerance,
                                    bool with_vectors) {
  Eigen::EigenSolver<Eigen::MatrixXd> solver(matrix, with_vectors);
  if (solver.info() != Eigen::Success)
    throw ConvergenceError("eigendecompose: dense QR iteration failed", 0.0, 0);
  RankedPairs pairs =
      rank_pairs(solver.eigenvalues(),
                 with_vectors ? Eigen::MatrixXcd(solver.eigenvectors()) : Eigen::MatrixXcd(),
                 top_k, with_vectors);
  return finalize_report(matrix, std::move(pairs), tolerance);
}

// Explicitly restarted Arnoldi with a dense solve of the small Hessenberg
// matrix per cycle. Good for the dominant spectrum of Markov-type operators;
// use the dense path when the full spectrum is wanted.
SpectrumReport arnoldi_eigendecompose(const Eigen::MatrixXd& matrix, int top_k, double tolerance,
                                      const EigenOptions& options) {
  const int n = static_cast<int>(matrix.rows());
  int m = options.arnoldi_subspace > 0 ? options.arnoldi_subspace
                                       : std::max(2 * top_k + 12, 30);
  m = std::min(m, n);

  Rng rng(options.seed);
  Eigen::VectorXd start(n);
  for (int i = 0; i < n; ++i) start[i] = rng.next_double() - 0.5;
  start.normalize();

  Eigen::MatrixXd basis(n, m + 1);
  Eigen::MatrixXd hess = Eigen::MatrixXd::Zero(m + 1, m);
  const double breakdown = 1e-14 * matrix.cwiseAbs().maxCoeff() * n;

  int last_converged = 0;
  double last_residual = std::numeric_limits<double>::infinity();
  for (int restart = 0; restart <= options.max_restarts; ++restart) {
    hess.setZero();
    basis.col(0) = start;
    int m_eff = m;
    for (int j = 0; j < m; ++j) {
      Eigen::VectorXd w = matrix * basis.col(j);
      for (int pass = 0; pass < 2; ++pass) {  // MGS with one reorthogonalization
        for (int i = 0; i <= j; ++i) {
          const double h = basis.col(i).dot(w);
          w -= h * basis.col(i);
          hess(i, j) += h;
        }
      }
      const double norm = w.norm();
      hess(j + 1, j) = norm;
      if (norm <= breakdown) {
        m_eff = j + 1;  // exact invariant subspace
        break;
      }
      basis.col(j + 1) = w / norm;
    }

    Eigen::EigenSolver<Eigen::MatrixXd> small(hess.topLeftCorner(m_eff, m_eff), true);
    if (small.info() != Eigen::Success)
      throw ConvergenceError("eigendecompose: Arnoldi projected solve failed", 0.0, 0);

    std::vector<int> order(m_eff);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int i, int j) {
      return eig_less(small.eigenvalues()[i], small.eigenvalues()[j]);
    });

    int want = std::min(top_k, m_eff);
    // Do not cut a conjugate pair at the boundary.
    if (want < m_eff) {
      const auto lo = small.eigenvalues()[order[want - 1]];
      const auto hi = small.eigenvalues()[order[want]];
      if (lo.imag() != 0.0 && std::abs(hi - std::conj(lo)) <= 1e-12 * std::abs(lo)) ++want;
    }

    Eigen::MatrixXcd ritz(n, want);
    Eigen::VectorXcd values(want);
    Eigen::VectorXd residuals(want);
    int converged = 0;
    for (int r = 0; r < want; ++r) {
      values[r] = small.eigenvalues()[order[r]];
      ritz.col(r) = basis.leftCols(m_eff) * small.eigenvectors().col(order[r]);
      ritz.col(r) /= ritz.col(r).norm();
      residuals[r] = (apply_real(matrix, ritz.col(r)) - values[r] * ritz.col(r)).norm();
      if (residuals[r] <= tolerance) ++converged;
    }
    last_converged = converged;
    last_residual = residuals.maxCoeff();

    if (converged >= std::min(top_k, want) || m_eff < m) {
      const int keep = std::min(top_k, want);
      if (converged < keep || keep < top_k)
        throw ConvergenceError("eigendecompose: Arnoldi stopped with " +
                                   std::to_string(converged) + " of " + std::to_string(top_k) +
                                   " pairs converged",
                               last_residual, converged);
      RankedPairs pairs;
      pairs.values = values.head(keep);
      if (options.compute_vectors) pairs.vectors = ritz.leftCols(keep);
      return finalize_report(matrix, std::move(pairs), tolerance);
    }

    // Explicit restart: combine the wanted Ritz directions.
    Eigen::VectorXd next = Eigen::VectorXd::Zero(n);
    for (int r = 0; r < want; ++r) next += ritz.col(r).real() + ritz.col(r).imag();
    if (next.norm() <= 1e-12) {
      for (int i = 0; i < n; ++i) next[i] = rng.next_double() - 0.5;
    }
    start = next.normalized();
  }
  throw ConvergenceError("eigendecompose: Arnoldi did not converge (" +
                             std::to_string(last_converged) + " of " + std::to_string(top_k) +
                             " pairs)",
                         last_residual, last_converged);
}

}  // namespace

SpectrumReport eigendecompose(const Eigen::MatrixXd& matrix, int top_k, double tolerance,
                              const EigenOptions& options) {
  if (matrix.rows() != matrix.cols()) throw DimensionError("eigendecompose: matrix not square");
  if (!matrix.allFinite()) throw ConfigError("eigendecompose: non-finite entries");
  const int n = static_cast<int>(matrix.rows());
  if (top_k < 1 || top_k > n) throw ConfigError("eigendecompose: need 1 <= top_k <= N");
  if (!(tolerance > 0.0)) throw ConfigError("eigendecompose: tolerance must be positive");

  auto method = options.method;
  if (method == EigenOptions::Method::Auto)
    method = n <= options.dense_limit ? EigenOptions::Method::Dense
                                      : EigenOptions::Method::Arnoldi;
  SpectrumReport report = method == EigenOptions::Method::Dense
                              ? dense_eigendecompose(matrix, top_k, tolerance,
                                                     options.compute_vectors)
                              : arnoldi_eigendecompose(matrix, top_k, tolerance, options);
  return report;
}

std::vector<RealEig> dominant_real_eigs(const SpectrumReport& report, int count,
                                        double imag_tol) {
  if (report.eigenvectors.cols() != report.eigenvalues.size())
    throw ConfigError("dominant_real_eigs: report carries no eigenvectors");
  std::vector<RealEig> real;
  for (int i = 0; i < report.eigenvalues.size(); ++i) {
    const auto lambda = report.eigenvalues[i];
    if (std::abs(lambda.imag()) <= imag_tol * std::abs(lambda)) real.push_back({lambda, i});
  }
  std::stable_sort(real.begin(), real.end(), [](const RealEig& a, const RealEig& b) {
    return a.value.real() > b.value.real();
  });
  if (static_cast<int>(real.size()) > count) real.resize(count);
  return real;
}

namespace {

std::vector<SweepRow> run_sweep(const std::function<Eigen::MatrixXd(double)>& builder,
                                std::vector<double> eps_grid, int top_k, double tolerance,
                                const EigenOptions& options, double imag_tol) {
  if (eps_grid.empty()) throw ConfigError("epsilon_sweep: empty epsilon grid");
  for (double e : eps_grid)
    if (!(e > 0.0)) throw ConfigError("epsilon_sweep: epsilon values must be positive");
  std::sort(eps_grid.begin(), eps_grid.end());

  std::vector<SweepRow> rows;
  rows.reserve(eps_grid.size());
  for (const double eps : eps_grid) {
    SweepRow row;
    row.epsilon = eps;
    try {
      const Eigen::MatrixXd m = builder(eps);
      const int k = std::min<int>(top_k, static_cast<int>(m.rows()));
      SpectrumReport report = eigendecompose(m, k, tolerance, options);
      report.epsilon = eps;
      for (int i = 0; i < report.eigenvalues.size(); ++i)
        row.moduli.push_back(std::abs(report.eigenvalues[i]));
      std::vector<double> reals;
      for (int i = 0; i < report.eigenvalues.size(); ++i) {
        const auto lambda = report.eigenvalues[i];
        if (std::abs(lambda.imag()) <= imag_tol * std::abs(lambda))
          reals.push_back(lambda.real());
      }
      std::sort(reals.rbegin(), reals.rend());
      if (static_cast<int>(reals.size()) > k) reals.resize(k);
      row.real_eigs = std::move(reals);
      row.ok = true;
      row.message = "ok";
    } catch (const std::exception& e) {
      row.ok = false;
      row.message = e.what();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

std::vector<SweepRow> epsilon_sweep(const std::function<Eigen::MatrixXd(double)>& builder,
                                    std::vector<double> eps_grid, int top_k, double tolerance,
                                    const EigenOptions& options, double imag_tol) {
  return run_sweep(builder, std::move(eps_grid), top_k, tolerance, options, imag_tol);
}

std::vector<SweepRow> epsilon_sweep(const std::function<TransferMatrix(double)>& builder,
                                    std::vector<double> eps_grid, int top_k, double tolerance,
                                    const EigenOptions& options, double imag_tol) {
  return run_sweep([&](double eps) { return builder(eps).gamma; }, std::move(eps_grid), top_k,
                   tolerance, options, imag_tol);
}

}  // namespace etop
