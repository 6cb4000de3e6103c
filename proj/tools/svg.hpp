#pragma once

#include <complex>
#include <string>
#include <vector>

namespace etop::cli {

/// One unit-circle panel of an eigenvalue scatter plot.
struct SpectrumPanel {
  double epsilon = 0.0;
  std::vector<std::complex<double>> eigenvalues;
};

/// Side-by-side unit-circle panels; every eigenvalue becomes one
/// <circle class="eig"/> marker.
std::string svg_spectrum_panels(const std::vector<SpectrumPanel>& panels);

/// Eigenvalue-vs-epsilon curves on a log10 x-axis; one polyline per rank plus
/// one <circle class="eig"/> marker per table point.
struct SweepCurvePoint {
  double epsilon = 0.0;
  double value = 0.0;
};
std::string svg_sweep_curves(const std::vector<std::vector<SweepCurvePoint>>& curves);

}  // namespace etop::cli
