#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace unmix {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

// Malformed or inconsistent input data (bad CSV, shape mismatch, violated
// precondition). Mapped to exit code 2 by the CLI.
struct DataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A computation that could not be carried out numerically (rank collapse,
// degenerate scaling, non-convergence treated as fatal). CLI exit code 3.
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class AxisUnit { nanometers, wavenumber };

std::string to_string(AxisUnit unit);
AxisUnit axis_unit_from_string(const std::string& token);

// Closed wavelength interval [lo, hi], in the units of the axis it is
// applied to.
struct Band {
  double lo = 0.0;
  double hi = 0.0;
};

// Spectral abscissa. Strictly monotone: increasing for nm, either direction
// for wavenumbers (instruments commonly report cm^-1 descending).
struct WavelengthAxis {
  Vector values;
  AxisUnit unit = AxisUnit::nanometers;

  Index size() const { return values.size(); }
  bool increasing() const { return values(values.size() - 1) > values(0); }

  // Mean step between consecutive points (signed).
  double mean_spacing() const;
  // True when every step is within rel_tol of the mean step.
  bool uniform(double rel_tol = 0.01) const;

  // Inclusive index range [first, last] of points falling inside the band.
  // Throws DataError when the intersection is empty.
  std::pair<Index, Index> band_indices(const Band& band) const;

  void validate() const;
};

WavelengthAxis make_uniform_axis(double first, double last, Index n,
                                 AxisUnit unit = AxisUnit::nanometers);

// n_samples x n_wavelengths absorbance matrix; rows are samples.
struct SpectraMatrix {
  Matrix values;
  WavelengthAxis axis;
  std::vector<std::string> sample_ids;

  Index n_samples() const { return values.rows(); }
  Index n_wavelengths() const { return values.cols(); }

  void validate() const;
};

// Hyperspectral image flattened to a SpectraMatrix, row-major pixel order:
// pixel (x, y) is sample y * width + x.
struct HyperCube {
  int width = 0;
  int height = 0;
  SpectraMatrix spectra;

  Index pixel_index(int x, int y) const {
    return static_cast<Index>(y) * width + x;
  }

  void validate() const;
};

// Thin SVD A = U diag(S) V^T with S non-increasing and the sign convention
// that the largest-magnitude entry of each V column is positive.
struct SvdFactors {
  Matrix U;  // n x r scores
  Vector S;  // r singular values
  Matrix V;  // p x r loadings

  Index rank() const { return S.size(); }
};

}  // namespace unmix
