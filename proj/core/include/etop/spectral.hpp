#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "etop/transfer.hpp"

namespace etop {

/// Eigenvalues sorted by descending modulus (ties: descending real part, then
/// ascending imaginary part), with the matching eigenvectors and the true
/// residuals ||A v - lambda v||_2 / ||v||_2.
struct SpectrumReport {
  Eigen::VectorXcd eigenvalues;
  Eigen::MatrixXcd eigenvectors;  // N x k; empty when vectors were not requested
  Eigen::VectorXd residuals;      // empty when vectors were not requested
  double epsilon = 0.0;           // provenance tag, set by sweep drivers
  int n_points = 0;
};

struct EigenOptions {
  enum class Method { Auto, Dense, Arnoldi };
  Method method = Method::Auto;
  /// Auto picks the dense Hessenberg+QR path up to this size and restarted
  /// Arnoldi above it.
  int dense_limit = 2000;
  bool compute_vectors = true;
  int arnoldi_subspace = 0;  // 0: max(2*top_k + 12, 30)
  int max_restarts = 80;
  std::uint64_t seed = 1234567;  // Arnoldi start vector
};

/// Top `top_k` eigenpairs of a real square matrix by modulus. Eigenvectors
/// are scaled so the largest-modulus entry is real positive and normalized to
/// unit 2-norm; for a real eigenvalue the result is real up to ~1e-8.
/// Throws ConvergenceError (with the converged count) when residuals cannot
/// be brought below `tolerance`.
SpectrumReport eigendecompose(const Eigen::MatrixXd& matrix, int top_k, double tolerance,
                              const EigenOptions& options = {});

struct RealEig {
  std::complex<double> value;
  int index;  // column into SpectrumReport::eigenvectors
};

/// Eigenvalues with |Im| <= imag_tol * |lambda|, sorted by descending real
/// part. May return fewer than `count`.
std::vector<RealEig> dominant_real_eigs(const SpectrumReport& report, int count,
                                        double imag_tol = 1e-6);

struct SweepRow {
  double epsilon = 0.0;
  bool ok = false;
  std::string message;            // failure stage when !ok
  std::vector<double> real_eigs;  // up to top_k, descending
  std::vector<double> moduli;     // up to top_k, descending
};

/// Builds the operator per epsilon, decomposes it, and records the dominant
/// real eigenvalues and moduli. Failures are recorded per row and the sweep
/// continues. Rows come back ordered by ascending epsilon.
std::vector<SweepRow> epsilon_sweep(const std::function<Eigen::MatrixXd(double)>& builder,
                                    std::vector<double> eps_grid, int top_k,
                                    double tolerance = 1e-9, const EigenOptions& options = {},
                                    double imag_tol = 1e-6);

std::vector<SweepRow> epsilon_sweep(const std::function<TransferMatrix(double)>& builder,
                                    std::vector<double> eps_grid, int top_k,
                                    double tolerance = 1e-9, const EigenOptions& options = {},
                                    double imag_tol = 1e-6);

}  // namespace etop
