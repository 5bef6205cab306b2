#include "unmix/decompose.hpp"

#include <Eigen/SVD>

#include <cmath>
#include <limits>

namespace unmix {

namespace {

// Largest-magnitude element of each loading column made positive; ties go to
// the lowest index. Keeps repeated decompositions bit-stable.
void fix_signs(Matrix& u, Matrix& v) {
  for (Index j = 0; j < v.cols(); ++j) {
    Index imax = 0;
    double amax = -1.0;
    for (Index i = 0; i < v.rows(); ++i) {
      const double a = std::abs(v(i, j));
      if (a > amax) {
        amax = a;
        imax = i;
      }
    }
    if (v(imax, j) < 0.0) {
      v.col(j) = -v.col(j);
      u.col(j) = -u.col(j);
    }
  }
}

}  // namespace

SvdFactors svd(const Matrix& a) {
  if (a.size() == 0) {
    throw DataError("svd: empty matrix");
  }
  if (!a.allFinite()) {
    throw DataError("svd: input contains non-finite values");
  }
  Eigen::JacobiSVD<Matrix> dec(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  SvdFactors f;
  f.U = dec.matrixU();
  f.S = dec.singularValues();
  f.V = dec.matrixV();
  fix_signs(f.U, f.V);
  return f;
}

SvdFactors svd(const SpectraMatrix& a) {
  a.validate();
  return svd(a.values);
}

SvdFactors truncate(const SvdFactors& f, Index k) {
  if (k < 1 || k > f.rank()) {
    throw DataError("truncate: k outside [1, rank]");
  }
  SvdFactors out;
  out.U = f.U.leftCols(k);
  out.S = f.S.head(k);
  out.V = f.V.leftCols(k);
  return out;
}

std::vector<std::pair<int, double>> scree(const SvdFactors& f) {
  std::vector<std::pair<int, double>> out;
  out.reserve(static_cast<std::size_t>(f.rank()));
  for (Index i = 0; i < f.rank(); ++i) {
    out.emplace_back(static_cast<int>(i) + 1, f.S(i));
  }
  return out;
}

Matrix pca_scores(const SpectraMatrix& a, Index k,
                  const std::optional<Band>& band) {
  a.validate();
  Matrix slice = a.values;
  if (band) {
    const auto [first, last] = a.axis.band_indices(*band);
    slice = a.values.middleCols(first, last - first + 1);
  }
  if (k < 1 || k > std::min(slice.rows(), slice.cols())) {
    throw DataError("pca_scores: k outside [1, min(n, p)]");
  }
  const Vector mean = slice.colwise().mean();
  slice.rowwise() -= mean.transpose();
  const SvdFactors f = svd(slice);
  return f.U.leftCols(k) * f.S.head(k).asDiagonal();
}

Matrix pinv(const Matrix& a) {
  Eigen::JacobiSVD<Matrix> dec(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Vector& s = dec.singularValues();
  const double cutoff = std::numeric_limits<double>::epsilon() *
                        static_cast<double>(std::max(a.rows(), a.cols())) *
                        (s.size() > 0 ? s(0) : 0.0);
  Vector inv = Vector::Zero(s.size());
  for (Index i = 0; i < s.size(); ++i) {
    if (s(i) > cutoff) inv(i) = 1.0 / s(i);
  }
  return dec.matrixV() * inv.asDiagonal() * dec.matrixU().transpose();
}

}  // namespace unmix
