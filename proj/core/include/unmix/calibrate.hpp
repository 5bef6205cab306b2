#pragma once

#include <string>

#include "unmix/types.hpp"

namespace unmix {

// Classical least squares against a single recovered spectrum:
// c = A a^T (a a^T)^-1, a scalar denominator for one spectrum. Biased when
// interfering components are not orthogonal to a; kept as the baseline the
// latent-projection calibration is measured against.
Vector cls_quantify(const SpectraMatrix& a, const Vector& a_hat);

struct TplsOptions {
  // NIPALS inner-loop tolerance. PLS1 converges in one pass, so this is
  // unused today; kept for a future multi-target extension.
  double tolerance = 1e-12;
  // Opt-in column centering of the transposed data and target. Default off:
  // both calibration routes operate on raw absorbances.
  bool center = false;
};

// Target PLS model: NIPALS PLS1 with samples and variables exchanged, i.e.
// standard PLS1 on X^T where each wavelength is an observation, each sample
// a predictor, and the target spectrum is the response. The regression
// vector m lives in sample space and reads as relative abundance.
struct TplsModel {
  Matrix W;        // n_samples x L weights
  Matrix T;        // n_wavelengths x L scores, mutually orthogonal
  Matrix P;        // n_samples x L loadings
  Vector Q;        // target loadings, identically 1 for a single target
  Vector B;        // inner regression coefficients, one per projection
  Vector m;        // abundance vector, = W (P^T W)^-1 B
  Vector ssq_x;    // cumulative % variance explained in X, length L
  Vector ssq_y;    // cumulative % variance explained in y, length L
  Index L = 0;             // projections actually fitted
  Index requested = 0;     // projections asked for
  bool truncated_at_rank = false;
  std::string warning;
};

// Fit with L latent projections. L beyond the numerical rank truncates the
// model there and sets truncated_at_rank/warning.
TplsModel tpls_fit(const SpectraMatrix& x, const Vector& y, Index projections,
                   const TplsOptions& options = {});

// Semiquantitative abundances: range_scale(m, lo, hi).
Vector tpls_predict(const TplsModel& model, double lo, double hi);

enum class SsqTrace { x, y };

// Smallest L whose cumulative variance-explained trace reaches the
// threshold; returns the maximum fitted L when unreachable.
Index select_projections(const TplsModel& model, double threshold_percent = 95.0,
                         SsqTrace which = SsqTrace::x);

}  // namespace unmix
