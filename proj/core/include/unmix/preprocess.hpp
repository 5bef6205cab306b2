#pragma once

#include "unmix/types.hpp"

namespace unmix {

// Savitsky-Golay moving polynomial filter.
struct SgFilterSpec {
  int window = 11;      // odd, >= 3
  int poly_order = 2;   // < window
  int deriv_order = 0;  // <= poly_order

  void validate() const;
};

// Smooths (or differentiates, deriv_order > 0) by least-squares polynomial
// fits over a sliding window. Requires a uniform axis (1% slack). Edge points
// use one-sided truncated windows so the output length equals the input
// length. Derivatives are with respect to the axis variable.
Vector savitsky_golay(const Vector& x, const WavelengthAxis& axis,
                      const SgFilterSpec& spec);

// Affine map sending min(v) -> lo and max(v) -> hi. Rejects constant input.
Vector range_scale(const Vector& v, double lo, double hi);

// x / max(x); requires max(x) > 0.
Vector max_rescale(const Vector& x);

// Repeated first derivative with respect to the axis: 3-point parabolic
// stencils (one-sided at the edges), applied `order` times. Output length
// equals input length. Handles mildly non-uniform axes exactly.
Vector derivative(const Vector& x, const WavelengthAxis& axis, int order);

}  // namespace unmix
