#pragma once

#include <Eigen/Dense>

#include "etop/errors.hpp"

namespace etop {

/// Shift map x -> x + theta (mod 1) on the d-torus, together with the size of
/// the regular lattice discretization (N = lattice_n^d points).
struct ShiftMapSpec {
  int dim = 1;
  Eigen::VectorXd theta;  // each component in (-1/2, 1/2)
  int lattice_n = 2;      // points per axis

  void validate() const {
    if (dim < 1) throw ConfigError("ShiftMapSpec: dim must be >= 1");
    if (theta.size() != dim) throw DimensionError("ShiftMapSpec: theta length != dim");
    if ((theta.array().abs() >= 0.5).any())
      throw ConfigError("ShiftMapSpec: theta components must lie in (-1/2, 1/2)");
    if (lattice_n < 2) throw ConfigError("ShiftMapSpec: lattice_n must be >= 2");
  }

  long long point_count() const {
    long long n = 1;
    for (int c = 0; c < dim; ++c) n *= lattice_n;
    return n;
  }
};

}  // namespace etop
