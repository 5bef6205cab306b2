#include "unmix/eval.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "unmix/preprocess.hpp"

namespace unmix {

double rmse_percent(const Vector& pred, const Vector& truth, double lo,
                    double hi) {
  if (pred.size() != truth.size() || pred.size() < 2) {
    throw DataError("rmse_percent: need equal lengths >= 2");
  }
  const Vector scaled = range_scale(pred, lo, hi);
  return std::sqrt((scaled - truth).squaredNorm() /
                   static_cast<double>(truth.size()));
}

double procrustes_distance(const Vector& a, const Vector& b,
                           ProcrustesScaling scaling) {
  if (a.size() != b.size() || a.size() < 2) {
    throw DataError("procrustes: need equal lengths >= 2");
  }
  Vector x = a;
  Vector y = b;
  if (scaling == ProcrustesScaling::max_rescaled_input) {
    x = max_rescale(x);
    y = max_rescale(y);
  }
  x.array() -= x.mean();
  y.array() -= y.mean();
  if (scaling == ProcrustesScaling::unit_norm) {
    const double nx = x.norm();
    const double ny = y.norm();
    if (nx <= 0.0 || ny <= 0.0) {
      throw DataError("procrustes: zero-variance input");
    }
    x /= nx;
    y /= ny;
  }
  // Optimal 1-D orthogonal alignment is the sign of the inner product.
  if (x.dot(y) < 0.0) y = -y;
  return (x - y).norm();
}

double r_squared(const Vector& actual, const Vector& pred) {
  if (actual.size() != pred.size() || actual.size() < 3) {
    throw DataError("r_squared: need equal lengths >= 3");
  }
  const double n = static_cast<double>(actual.size());
  const Vector xa = actual.array() - actual.mean();
  const Vector yp = pred.array() - pred.mean();
  const double sxx = xa.squaredNorm() / n;
  const double syy = yp.squaredNorm() / n;
  if (sxx <= 0.0 || syy <= 0.0) {
    throw DataError("r_squared: zero-variance input");
  }
  const double sxy = xa.dot(yp) / n;
  return (sxy * sxy) / (sxx * syy);
}

namespace {

Matrix scale_map_unit(const Matrix& m) {
  const double lo = m.minCoeff();
  const double hi = m.maxCoeff();
  if (hi <= lo) return Matrix::Zero(m.rows(), m.cols());
  return (m.array() - lo) / (hi - lo);
}

}  // namespace

JackknifeMaps jackknife_maps(
    const std::function<Matrix(const std::vector<int>&)>& run, int n_samples,
    bool scale_maps) {
  if (n_samples < 3) {
    throw DataError("jackknife: need at least 3 samples");
  }
  std::vector<Matrix> maps;
  maps.reserve(n_samples);
  for (int leave = 0; leave < n_samples; ++leave) {
    std::vector<int> subset;
    subset.reserve(n_samples - 1);
    for (int i = 0; i < n_samples; ++i) {
      if (i != leave) subset.push_back(i);
    }
    Matrix map;
    try {
      map = run(subset);
    } catch (const std::exception& err) {
      throw NumericalError("jackknife: trial leaving out sample " +
                           std::to_string(leave) + " failed: " + err.what());
    }
    if (!maps.empty() && (map.rows() != maps.front().rows() ||
                          map.cols() != maps.front().cols())) {
      throw NumericalError("jackknife: trial maps disagree in shape");
    }
    maps.push_back(scale_maps ? scale_map_unit(map) : std::move(map));
  }

  const double n = static_cast<double>(n_samples);
  JackknifeMaps out;
  out.mean = Matrix::Zero(maps.front().rows(), maps.front().cols());
  for (const Matrix& m : maps) out.mean += m;
  out.mean /= n;

  // Tukey jackknife variance: (n-1)/n times the spread around the mean.
  Matrix var = Matrix::Zero(out.mean.rows(), out.mean.cols());
  for (const Matrix& m : maps) var += (m - out.mean).cwiseAbs2();
  var *= (n - 1.0) / n;
  out.sd = var.cwiseSqrt();
  return out;
}

double nn_distance_cv(const Matrix& scores) {
  const Index n = scores.rows();
  if (n < 3) {
    throw DataError("nn_distance_cv: need at least 3 points");
  }
  Vector nearest(n);
  for (Index i = 0; i < n; ++i) {
    double best = std::numeric_limits<double>::infinity();
    for (Index j = 0; j < n; ++j) {
      if (i == j) continue;
      best = std::min(best, (scores.row(i) - scores.row(j)).norm());
    }
    nearest(i) = best;
  }
  const double mean = nearest.mean();
  if (mean <= 0.0) {
    throw DataError("nn_distance_cv: all points coincide");
  }
  const double sd = std::sqrt((nearest.array() - mean).square().sum() /
                              static_cast<double>(n - 1));
  return 100.0 * sd / mean;
}

double cosine_similarity(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) {
    throw DataError("cosine_similarity: length mismatch");
  }
  const double na = a.norm();
  const double nb = b.norm();
  if (na <= 0.0 || nb <= 0.0) {
    throw DataError("cosine_similarity: zero vector");
  }
  return a.dot(b) / (na * nb);
}

std::vector<int> match_components(const Matrix& estimates,
                                  const Matrix& truth) {
  if (estimates.rows() != truth.rows() || estimates.cols() != truth.cols()) {
    throw DataError("match_components: shape mismatch");
  }
  const Index k = estimates.rows();
  std::vector<bool> est_used(k, false), truth_used(k, false);
  std::vector<int> assignment(k, -1);
  for (Index round = 0; round < k; ++round) {
    double best = -2.0;
    Index bi = -1, bj = -1;
    for (Index i = 0; i < k; ++i) {
      if (est_used[i]) continue;
      for (Index j = 0; j < k; ++j) {
        if (truth_used[j]) continue;
        const double ni = estimates.row(i).norm();
        const double nj = truth.row(j).norm();
        const double cos =
            (ni > 0.0 && nj > 0.0)
                ? estimates.row(i).dot(truth.row(j)) / (ni * nj)
                : -1.0;
        if (cos > best) {
          best = cos;
          bi = i;
          bj = j;
        }
      }
    }
    est_used[bi] = true;
    truth_used[bj] = true;
    assignment[bi] = static_cast<int>(bj);
  }
  return assignment;
}

}  // namespace unmix
