#include "unmix/types.hpp"

#include <cmath>

namespace unmix {

std::string to_string(AxisUnit unit) {
  return unit == AxisUnit::nanometers ? "nm" : "cm-1";
}

AxisUnit axis_unit_from_string(const std::string& token) {
  if (token == "cm-1" || token == "cm^-1" || token == "wavenumber" ||
      token == "wavenumber_cm-1") {
    return AxisUnit::wavenumber;
  }
  return AxisUnit::nanometers;
}

double WavelengthAxis::mean_spacing() const {
  const Index n = values.size();
  return (values(n - 1) - values(0)) / static_cast<double>(n - 1);
}

bool WavelengthAxis::uniform(double rel_tol) const {
  const double step = mean_spacing();
  if (step == 0.0) return false;
  for (Index i = 0; i + 1 < values.size(); ++i) {
    const double d = values(i + 1) - values(i);
    if (std::abs(d - step) > rel_tol * std::abs(step)) return false;
  }
  return true;
}

std::pair<Index, Index> WavelengthAxis::band_indices(const Band& band) const {
  if (!(band.lo <= band.hi)) {
    throw DataError("band bounds out of order: lo > hi");
  }
  Index first = -1;
  Index last = -1;
  for (Index i = 0; i < values.size(); ++i) {
    if (values(i) >= band.lo && values(i) <= band.hi) {
      if (first < 0) first = i;
      last = i;
    }
  }
  if (first < 0) {
    throw DataError("band does not intersect the wavelength axis");
  }
  return {first, last};
}

void WavelengthAxis::validate() const {
  if (values.size() < 3) {
    throw DataError("wavelength axis needs at least 3 points");
  }
  if (!values.allFinite()) {
    throw DataError("wavelength axis contains non-finite values");
  }
  const bool inc = values(1) > values(0);
  for (Index i = 0; i + 1 < values.size(); ++i) {
    const double d = values(i + 1) - values(i);
    if (inc ? d <= 0.0 : d >= 0.0) {
      throw DataError("wavelength axis must be strictly monotone");
    }
  }
  if (unit == AxisUnit::nanometers && !inc) {
    throw DataError("nm axis must be increasing (descending is reserved for cm-1)");
  }
}

WavelengthAxis make_uniform_axis(double first, double last, Index n,
                                 AxisUnit unit) {
  WavelengthAxis axis;
  axis.unit = unit;
  axis.values = Vector::LinSpaced(n, first, last);
  axis.validate();
  return axis;
}

void SpectraMatrix::validate() const {
  axis.validate();
  if (values.cols() != axis.size()) {
    throw DataError("spectra column count does not match the axis length");
  }
  if (values.rows() < 1) {
    throw DataError("spectra matrix has no samples");
  }
  if (!values.allFinite()) {
    throw DataError("spectra matrix contains non-finite values");
  }
  if (!sample_ids.empty() &&
      static_cast<Index>(sample_ids.size()) != values.rows()) {
    throw DataError("sample id count does not match the sample count");
  }
}

void HyperCube::validate() const {
  spectra.validate();
  if (width <= 0 || height <= 0) {
    throw DataError("cube dimensions must be positive");
  }
  if (static_cast<Index>(width) * height != spectra.n_samples()) {
    throw DataError("cube width*height does not match the sample count");
  }
}

}  // namespace unmix
