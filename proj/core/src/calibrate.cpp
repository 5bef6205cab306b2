#include "unmix/calibrate.hpp"

#include <Eigen/LU>

#include <cmath>

#include "unmix/preprocess.hpp"

namespace unmix {

Vector cls_quantify(const SpectraMatrix& a, const Vector& a_hat) {
  a.validate();
  if (a_hat.size() != a.n_wavelengths()) {
    throw DataError("cls: spectrum length does not match the data");
  }
  const double denom = a_hat.squaredNorm();
  if (denom <= 0.0) {
    throw DataError("cls: zero target spectrum");
  }
  return a.values * a_hat / denom;
}

TplsModel tpls_fit(const SpectraMatrix& x, const Vector& y, Index projections,
                   const TplsOptions& options) {
  x.validate();
  const Index n = x.n_samples();
  const Index p = x.n_wavelengths();
  if (y.size() != p) {
    throw DataError("tpls: target spectrum length does not match the data");
  }
  if (projections < 1 || projections > std::min(n, p)) {
    throw DataError("tpls: projections outside [1, min(n, p)]");
  }

  // Work on the transposed arrangement: wavelengths are the observations.
  Matrix z = x.values.transpose();  // p x n
  Vector u = y;
  if (options.center) {
    const Vector zmean = z.colwise().mean();
    z.rowwise() -= zmean.transpose();
    u.array() -= u.mean();
  }

  const double ssq_x0 = z.squaredNorm();
  const double ssq_y0 = u.squaredNorm();
  if (ssq_x0 <= 0.0) {
    throw DataError("tpls: zero data matrix");
  }

  TplsModel model;
  model.requested = projections;
  model.W.resize(n, projections);
  model.T.resize(p, projections);
  model.P.resize(n, projections);
  model.Q.resize(projections);
  model.B.resize(projections);
  model.ssq_x.resize(projections);
  model.ssq_y.resize(projections);

  const double rank_eps = 1e-12 * std::sqrt(ssq_x0);
  Index fitted = 0;
  for (Index l = 0; l < projections; ++l) {
    Vector w = z.transpose() * u;  // sample-space weight
    const double wn = w.norm();
    if (!(wn > rank_eps)) {
      model.truncated_at_rank = true;
      model.warning = "numerical rank reached; model truncated at L=" +
                      std::to_string(fitted);
      break;
    }
    w /= wn;
    const Vector t = z * w;  // wavelength-space score
    const double tt = t.squaredNorm();
    if (!(tt > rank_eps * rank_eps)) {
      model.truncated_at_rank = true;
      model.warning = "degenerate score; model truncated at L=" +
                      std::to_string(fitted);
      break;
    }
    const Vector pvec = z.transpose() * t / tt;
    const double b = u.dot(t) / tt;

    z.noalias() -= t * pvec.transpose();
    u.noalias() -= b * t;

    model.W.col(l) = w;
    model.T.col(l) = t;
    model.P.col(l) = pvec;
    model.Q(l) = 1.0;
    model.B(l) = b;
    model.ssq_x(l) = 100.0 * (1.0 - z.squaredNorm() / ssq_x0);
    model.ssq_y(l) =
        ssq_y0 > 0.0 ? 100.0 * (1.0 - u.squaredNorm() / ssq_y0) : 100.0;
    ++fitted;
  }
  if (fitted == 0) {
    throw NumericalError("tpls: no latent projection could be extracted");
  }
  model.L = fitted;
  model.W.conservativeResize(Eigen::NoChange, fitted);
  model.T.conservativeResize(Eigen::NoChange, fitted);
  model.P.conservativeResize(Eigen::NoChange, fitted);
  model.Q.conservativeResize(fitted);
  model.B.conservativeResize(fitted);
  model.ssq_x.conservativeResize(fitted);
  model.ssq_y.conservativeResize(fitted);

  // Regression vector in sample space, summed over the fitted projections.
  const Matrix ptw = model.P.transpose() * model.W;
  model.m = model.W * ptw.partialPivLu().solve(model.B);
  return model;
}

Vector tpls_predict(const TplsModel& model, double lo, double hi) {
  if (model.L < 1) {
    throw DataError("tpls_predict: unfitted model");
  }
  return range_scale(model.m, lo, hi);
}

Index select_projections(const TplsModel& model, double threshold_percent,
                         SsqTrace which) {
  if (model.L < 1) {
    throw DataError("select_projections: unfitted model");
  }
  const Vector& trace = which == SsqTrace::x ? model.ssq_x : model.ssq_y;
  for (Index l = 0; l < trace.size(); ++l) {
    if (trace(l) >= threshold_percent) return l + 1;
  }
  return model.L;  // threshold unreachable: everything we have
}

}  // namespace unmix
