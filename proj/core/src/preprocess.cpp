#include "unmix/preprocess.hpp"

#include <Eigen/QR>

#include <algorithm>
#include <cmath>

namespace unmix {

void SgFilterSpec::validate() const {
  if (window < 3 || window % 2 == 0) {
    throw DataError("savitsky-golay window must be odd and >= 3");
  }
  if (poly_order < 0 || poly_order >= window) {
    throw DataError("savitsky-golay polynomial order must be < window");
  }
  if (deriv_order < 0 || deriv_order > poly_order) {
    throw DataError("savitsky-golay derivative order must be <= polynomial order");
  }
}

namespace {

// Least-squares polynomial fit over points (offsets, x) and the deriv-th
// derivative of the fit evaluated at offset zero.
double local_poly_derivative(const Vector& offsets, const Vector& x,
                             int poly_order, int deriv) {
  const Index m = offsets.size();
  Matrix vand(m, poly_order + 1);
  for (Index i = 0; i < m; ++i) {
    double pw = 1.0;
    for (int j = 0; j <= poly_order; ++j) {
      vand(i, j) = pw;
      pw *= offsets(i);
    }
  }
  const Vector coef = vand.colPivHouseholderQr().solve(x);
  double factorial = 1.0;
  for (int j = 2; j <= deriv; ++j) factorial *= j;
  return coef(deriv) * factorial;
}

}  // namespace

Vector savitsky_golay(const Vector& x, const WavelengthAxis& axis,
                      const SgFilterSpec& spec) {
  spec.validate();
  axis.validate();
  const Index n = x.size();
  if (n != axis.size()) {
    throw DataError("savitsky-golay: vector length does not match the axis");
  }
  if (n < spec.window) {
    throw DataError("savitsky-golay: input shorter than the window");
  }
  if (!axis.uniform(0.01)) {
    throw DataError("savitsky-golay requires uniform axis spacing (1% slack)");
  }

  const Index half = spec.window / 2;
  Vector out(n);
  for (Index i = 0; i < n; ++i) {
    Index lo = std::max<Index>(0, i - half);
    Index hi = std::min<Index>(n - 1, i + half);
    // Truncated edge windows keep at least poly_order + 1 points.
    while (hi - lo < spec.poly_order) {
      if (lo > 0) --lo;
      if (hi < n - 1) ++hi;
    }
    const Index m = hi - lo + 1;
    Vector offsets(m);
    for (Index j = 0; j < m; ++j) offsets(j) = axis.values(lo + j) - axis.values(i);
    out(i) = local_poly_derivative(offsets, x.segment(lo, m), spec.poly_order,
                                   spec.deriv_order);
  }
  return out;
}

Vector range_scale(const Vector& v, double lo, double hi) {
  if (v.size() < 1) {
    throw DataError("range_scale: empty vector");
  }
  const double vmin = v.minCoeff();
  const double vmax = v.maxCoeff();
  if (vmax <= vmin) {
    throw DataError("range_scale: constant vector has no defined scaling");
  }
  return lo + (hi - lo) / (vmax - vmin) * (v.array() - vmin).matrix();
}

Vector max_rescale(const Vector& x) {
  if (x.size() < 1) {
    throw DataError("max_rescale: empty vector");
  }
  const double m = x.maxCoeff();
  if (m <= 0.0) {
    throw DataError("max_rescale: maximum must be positive");
  }
  return x / m;
}

namespace {

// Derivative at xe of the parabola through (la, fa), (lb, fb), (lc, fc).
double parabola_derivative(double la, double lb, double lc, double fa,
                           double fb, double fc, double xe) {
  const double da = (2.0 * xe - lb - lc) / ((la - lb) * (la - lc));
  const double db = (2.0 * xe - la - lc) / ((lb - la) * (lb - lc));
  const double dc = (2.0 * xe - la - lb) / ((lc - la) * (lc - lb));
  return fa * da + fb * db + fc * dc;
}

Vector derivative_once(const Vector& x, const WavelengthAxis& axis) {
  const Index n = x.size();
  Vector out(n);
  const auto& l = axis.values;
  for (Index i = 0; i < n; ++i) {
    const Index c = std::clamp<Index>(i, 1, n - 2);
    out(i) = parabola_derivative(l(c - 1), l(c), l(c + 1), x(c - 1), x(c),
                                 x(c + 1), l(i));
  }
  return out;
}

}  // namespace

Vector derivative(const Vector& x, const WavelengthAxis& axis, int order) {
  if (order < 1) {
    throw DataError("derivative: order must be >= 1");
  }
  axis.validate();
  if (x.size() != axis.size()) {
    throw DataError("derivative: vector length does not match the axis");
  }
  if (x.size() < order + 2) {
    throw DataError("derivative: input too short for the requested order");
  }
  Vector d = x;
  for (int k = 0; k < order; ++k) d = derivative_once(d, axis);
  return d;
}

}  // namespace unmix
