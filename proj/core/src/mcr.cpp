#include "unmix/mcr.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "unmix/decompose.hpp"
#include "unmix/rng.hpp"

namespace unmix {

Matrix simplisma(const SpectraMatrix& a, int n, double alpha_fraction) {
  a.validate();
  const Index rows = a.n_samples();
  const Index cols = a.n_wavelengths();
  if (n < 1 || n > cols) {
    throw DataError("simplisma: component count outside [1, n_wavelengths]");
  }
  if (!(alpha_fraction > 0.0) || alpha_fraction > 0.2) {
    throw DataError("simplisma: alpha fraction outside (0, 0.2]");
  }

  Vector mu(cols), sigma(cols);
  for (Index j = 0; j < cols; ++j) {
    const double m = a.values.col(j).mean();
    mu(j) = m;
    sigma(j) = std::sqrt((a.values.col(j).array() - m).square().mean());
  }
  const double alpha = alpha_fraction * mu.maxCoeff();

  // Correlation around the origin of the noise-damped, length-normalized
  // columns; determinants of its submatrices measure independence.
  Matrix z = a.values;
  for (Index j = 0; j < cols; ++j) {
    const double len = std::sqrt(mu(j) * mu(j) + (sigma(j) + alpha) * (sigma(j) + alpha));
    z.col(j) /= len > 0.0 ? len : 1.0;
  }
  const Matrix coo = z.transpose() * z / static_cast<double>(rows);

  const Vector base_purity =
      (sigma.array() / (mu.array() + alpha)).matrix();

  std::vector<Index> picked;
  picked.reserve(n);
  for (int step = 0; step < n; ++step) {
    Index best = -1;
    double best_purity = -1.0;
    for (Index j = 0; j < cols; ++j) {
      if (std::find(picked.begin(), picked.end(), j) != picked.end()) continue;
      double weight = 1.0;
      if (!picked.empty()) {
        const Index k = static_cast<Index>(picked.size()) + 1;
        Matrix sub(k, k);
        std::vector<Index> idx;
        idx.push_back(j);
        idx.insert(idx.end(), picked.begin(), picked.end());
        for (Index r = 0; r < k; ++r)
          for (Index c = 0; c < k; ++c) sub(r, c) = coo(idx[r], idx[c]);
        weight = sub.determinant();
      }
      const double purity = weight * base_purity(j);
      if (purity > best_purity) {
        best_purity = purity;
        best = j;
      }
    }
    if (best < 0 || !(best_purity > 1e-12)) {
      throw DataError(
          "simplisma: no independent pure variable left for component " +
          std::to_string(step + 1));
    }
    picked.push_back(best);
  }

  // Pure-variable columns act as concentration profiles; arrange them into
  // spectra estimates by least squares.
  Matrix c0(rows, n);
  for (int i = 0; i < n; ++i) c0.col(i) = a.values.col(picked[i]);
  return pinv(c0) * a.values;
}

Matrix apply_constraints(const Matrix& m, const McrConstraints& which,
                         bool rows_are_concentrations) {
  Matrix out = m;
  const bool nonneg =
      rows_are_concentrations ? which.nonneg_C : which.nonneg_S;
  if (nonneg) {
    out = out.cwiseMax(0.0);
  }
  if (rows_are_concentrations && which.closure_C) {
    for (Index i = 0; i < out.rows(); ++i) {
      const double sum = out.row(i).sum();
      if (sum <= 0.0) {
        throw DataError("closure: sample row " + std::to_string(i) +
                        " sums to zero");
      }
      out.row(i) /= sum;
    }
  }
  return out;
}

double lack_of_fit(const Matrix& a, const Matrix& c, const Matrix& s) {
  if (c.rows() != a.rows() || s.cols() != a.cols() || c.cols() != s.rows()) {
    throw DataError("lack_of_fit: nonconforming shapes");
  }
  const double denom = a.norm();
  if (denom <= 0.0) {
    throw DataError("lack_of_fit: zero data matrix");
  }
  return 100.0 * (a - c * s).norm() / denom;
}

namespace {

bool component_collapsed(const Matrix& c, const Matrix& s) {
  for (Index j = 0; j < c.cols(); ++j) {
    if (c.col(j).norm() <= 1e-12) return true;
  }
  for (Index i = 0; i < s.rows(); ++i) {
    if (s.row(i).norm() <= 1e-12) return true;
  }
  return false;
}

}  // namespace

McrResult mcr_als(const SpectraMatrix& a, const McrConfig& config) {
  a.validate();
  const Index n = a.n_samples();
  const Index p = a.n_wavelengths();
  const int k = config.n_components;
  if (k < 1 || k > std::min(n, p)) {
    throw DataError("mcr: component count outside [1, min(n, p)]");
  }
  if (config.max_iterations < 1 || !(config.tol > 0.0)) {
    throw DataError("mcr: invalid iteration cap or tolerance");
  }

  Matrix s;
  switch (config.init) {
    case McrInit::simplisma:
      s = simplisma(a, k, config.simplisma_alpha);
      break;
    case McrInit::provided:
      if (config.s0.rows() != k || config.s0.cols() != p) {
        throw DataError("mcr: provided S0 has the wrong shape");
      }
      s = config.s0;
      break;
    case McrInit::random: {
      Rng rng(config.seed);
      s.resize(k, p);
      for (Index i = 0; i < s.rows(); ++i)
        for (Index j = 0; j < s.cols(); ++j) s(i, j) = std::abs(rng.gaussian());
      break;
    }
  }

  McrResult result;
  Matrix c = Matrix::Zero(n, k);
  double prev_lof = std::numeric_limits<double>::infinity();

  for (int it = 1; it <= config.max_iterations; ++it) {
    Matrix c_next, s_next;
    try {
      c_next = apply_constraints(a.values * pinv(s), config.constraints, true);
      s_next = apply_constraints(pinv(c_next) * a.values, config.constraints,
                                 false);
    } catch (const DataError& err) {
      result.rank_collapse = true;
      result.diagnostic = err.what();
      break;
    }
    if (component_collapsed(c_next, s_next)) {
      result.rank_collapse = true;
      result.diagnostic = "component profile collapsed to zero";
      break;
    }

    const double lof = lack_of_fit(a.values, c_next, s_next);
    if (lof > prev_lof + 1e-9) {
      // Constraint clipping pushed the fit uphill: keep the previous iterate.
      result.diagnostic = "stopped on lack-of-fit increase";
      break;
    }
    c = std::move(c_next);
    s = std::move(s_next);
    result.lof_trace.push_back(lof);
    result.iterations = it;

    const double change = prev_lof - lof;
    if (lof < 1e-10 ||
        (std::isfinite(prev_lof) &&
         change / std::max(prev_lof, 1e-300) < config.tol)) {
      result.converged = true;
      break;
    }
    prev_lof = lof;
  }

  result.C = std::move(c);
  result.S = std::move(s);
  return result;
}

}  // namespace unmix
