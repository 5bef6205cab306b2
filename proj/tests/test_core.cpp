#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "test_helpers.hpp"
#include "unmix/decompose.hpp"
#include "unmix/synth.hpp"

using namespace unmix;
using testutil::orthonormality_defect;
using testutil::random_matrix;

TEST_CASE("svd of the identity has unit singular values") {
  const SvdFactors f = svd(Matrix::Identity(3, 3));
  REQUIRE(f.rank() == 3);
  for (Index i = 0; i < 3; ++i) CHECK(f.S(i) == doctest::Approx(1.0));
}

TEST_CASE("svd of a rank-1 outer product concentrates the norm product") {
  Vector c = testutil::random_vector(6, 11);
  Vector s = testutil::random_vector(9, 12);
  c *= 2.0 / c.norm();
  s *= 3.0 / s.norm();
  const SvdFactors f = svd(Matrix(c * s.transpose()));
  CHECK(f.S(0) == doctest::Approx(6.0).epsilon(1e-12));
  for (Index i = 1; i < f.rank(); ++i) {
    CHECK(f.S(i) == doctest::Approx(0.0).epsilon(0.0).scale(1e-12));
  }
}

TEST_CASE("svd factors reconstruct and are orthonormal") {
  const Matrix a = random_matrix(8, 20, 42);
  const SvdFactors f = svd(a);
  REQUIRE(f.rank() == 8);
  const Matrix back = f.U * f.S.asDiagonal() * f.V.transpose();
  CHECK((back - a).norm() / a.norm() < 1e-8);
  CHECK(orthonormality_defect(f.U) < 1e-8);
  CHECK(orthonormality_defect(f.V) < 1e-8);
  // Ordering.
  for (Index i = 0; i + 1 < f.rank(); ++i) CHECK(f.S(i) >= f.S(i + 1));
  CHECK(f.S(f.rank() - 1) >= 0.0);
}

TEST_CASE("svd rejects non-finite input") {
  Matrix a = random_matrix(4, 5, 1);
  a(2, 3) = std::nan("");
  CHECK_THROWS_AS(svd(a), DataError);
  CHECK_THROWS_AS(svd(Matrix()), DataError);
}

TEST_CASE("svd sign convention is stable and pins loading maxima positive") {
  const Matrix a = random_matrix(7, 15, 77);
  const SvdFactors f1 = svd(a);
  const SvdFactors f2 = svd(a);
  CHECK((f1.V - f2.V).cwiseAbs().maxCoeff() == 0.0);
  CHECK((f1.U - f2.U).cwiseAbs().maxCoeff() == 0.0);
  for (Index j = 0; j < f1.rank(); ++j) {
    Index imax = 0;
    f1.V.col(j).cwiseAbs().maxCoeff(&imax);
    CHECK(f1.V(imax, j) > 0.0);
  }
}

TEST_CASE("truncate keeps the leading factors") {
  const Matrix a = random_matrix(6, 10, 3);
  const SvdFactors f = svd(a);

  SUBCASE("k = r is the identity") {
    const SvdFactors t = truncate(f, f.rank());
    CHECK((t.U - f.U).norm() == 0.0);
    CHECK((t.S - f.S).norm() == 0.0);
    CHECK((t.V - f.V).norm() == 0.0);
  }

  SUBCASE("k = 1 on rank-1 data reconstructs exactly") {
    const Vector c = testutil::random_vector(6, 4);
    const Vector s = testutil::random_vector(10, 5);
    const Matrix r1 = c * s.transpose();
    const SvdFactors g = truncate(svd(r1), 1);
    const Matrix back = g.U * g.S.asDiagonal() * g.V.transpose();
    CHECK((back - r1).norm() / r1.norm() < 1e-12);
  }

  SUBCASE("out-of-range k is rejected") {
    CHECK_THROWS_AS(truncate(f, 0), DataError);
    CHECK_THROWS_AS(truncate(f, f.rank() + 1), DataError);
  }
}

TEST_CASE("rank-2 truncation of a 3-component mixture leaves the third singular value") {
  // Eckart-Young: the residual of the best rank-2 approximation is s3.
  const Matrix c = random_matrix(12, 3, 21, 0.1, 1.0);
  const Matrix s = random_matrix(3, 40, 22, 0.0, 1.0);
  const Matrix a = c * s;
  const SvdFactors f = svd(a);
  const SvdFactors t = truncate(f, 2);
  const Matrix back = t.U * t.S.asDiagonal() * t.V.transpose();
  CHECK(std::abs((a - back).norm() - f.S(2)) < 1e-8);
}

TEST_CASE("Eckart-Young holds at every truncation level") {
  const Matrix a = random_matrix(9, 14, 33);
  const SvdFactors f = svd(a);
  for (Index k = 1; k <= f.rank(); ++k) {
    const SvdFactors t = truncate(f, k);
    const double resid2 =
        (a - t.U * t.S.asDiagonal() * t.V.transpose()).squaredNorm();
    const double tail2 = f.S.tail(f.rank() - k).squaredNorm();
    CHECK(resid2 == doctest::Approx(tail2).epsilon(1e-6));
  }
}

TEST_CASE("degenerate singular values: subspace projectors match") {
  // Identity-like data has a tied spectrum; individual vectors are free but
  // the spanned subspace is not.
  Matrix a = Matrix::Zero(4, 4);
  a.diagonal() << 3.0, 3.0, 1.0, 1.0;
  const SvdFactors f = svd(a);
  const Matrix v2 = f.V.leftCols(2);
  const Matrix proj = v2 * v2.transpose();
  Matrix expected = Matrix::Zero(4, 4);
  expected(0, 0) = expected(1, 1) = 1.0;
  CHECK((proj - expected).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("scree emits ordered 1-based pairs") {
  SUBCASE("identity") {
    const auto pairs = scree(svd(Matrix::Identity(3, 3)));
    REQUIRE(pairs.size() == 3);
    for (int i = 0; i < 3; ++i) {
      CHECK(pairs[i].first == i + 1);
      CHECK(pairs[i].second == doctest::Approx(1.0));
    }
  }
  SUBCASE("rank-1 data has a vanishing second entry") {
    const Vector c = testutil::random_vector(5, 8);
    const Vector s = testutil::random_vector(7, 9);
    const auto pairs = scree(svd(Matrix(c * s.transpose())));
    CHECK(pairs[1].second < 1e-12 * pairs[0].second);
  }
  SUBCASE("noisy 3-component mixture shows the elbow at index 4") {
    const Matrix c = random_matrix(20, 3, 51, 0.1, 1.0);
    const Matrix s = random_matrix(3, 60, 52, 0.0, 1.0);
    Matrix a = c * s + 1e-4 * random_matrix(20, 60, 53);
    const auto pairs = scree(svd(a));
    // Structural values dwarf the noise floor.
    CHECK(pairs[2].second > 100.0 * pairs[3].second);
  }
}

TEST_CASE("pca_scores") {
  SUBCASE("repeated spectrum centers to zero scores") {
    Matrix a(4, 10);
    const Vector s = testutil::random_vector(10, 14, 0.0, 1.0);
    for (Index i = 0; i < 4; ++i) a.row(i) = s.transpose();
    const Matrix scores = pca_scores(testutil::wrap_spectra(a), 2);
    CHECK(scores.cwiseAbs().maxCoeff() < 1e-12);
  }

  SUBCASE("two samples symmetric about the mean score as +/- the same point") {
    Matrix a(2, 8);
    a.row(0) = testutil::random_vector(8, 15).transpose();
    a.row(1) = -a.row(0);
    const Matrix scores = pca_scores(testutil::wrap_spectra(a), 1);
    CHECK(scores(0, 0) == doctest::Approx(-scores(1, 0)).epsilon(1e-10));
  }

  SUBCASE("noise-free simplex design scores are collinear along edges") {
    // Edge samples (one component zero) are affine images of a segment, so
    // their 3-d scores must lie on a line.
    const Matrix design = simplex_design(5, 3, true);
    const Matrix pure = random_matrix(3, 30, 61, 0.0, 1.0);
    const SpectraMatrix a = testutil::wrap_spectra(design * pure);
    const Matrix scores = pca_scores(a, 3);

    std::vector<int> edge_rows;
    for (Index i = 0; i < design.rows(); ++i) {
      if (design(i, 2) == 0.0) edge_rows.push_back(static_cast<int>(i));
    }
    REQUIRE(edge_rows.size() == 3);
    Matrix edge(3, 3);
    for (int i = 0; i < 3; ++i) edge.row(i) = scores.row(edge_rows[i]);
    edge.rowwise() -= edge.colwise().mean();
    Eigen::JacobiSVD<Matrix> dec(edge);
    CHECK(dec.singularValues()(1) < 1e-6);  // all variance on one axis
  }

  SUBCASE("band slicing equals pre-sliced input") {
    const Matrix values = random_matrix(6, 20, 71);
    SpectraMatrix a = testutil::wrap_spectra(values);
    const Band band{a.axis.values(4), a.axis.values(11)};
    const Matrix banded = pca_scores(a, 3, band);

    SpectraMatrix sliced;
    sliced.values = values.middleCols(4, 8);
    sliced.axis.values = a.axis.values.segment(4, 8);
    const Matrix direct = pca_scores(sliced, 3);
    CHECK((banded - direct).cwiseAbs().maxCoeff() < 1e-12);
  }

  SUBCASE("empty band intersection is rejected") {
    const SpectraMatrix a = testutil::wrap_spectra(random_matrix(5, 12, 81));
    CHECK_THROWS_AS(pca_scores(a, 2, Band{1.0, 2.0}), DataError);
  }
}

TEST_CASE("axis validation") {
  WavelengthAxis axis;
  axis.values = Vector::LinSpaced(5, 100.0, 104.0);
  CHECK_NOTHROW(axis.validate());

  SUBCASE("too short") {
    axis.values = Vector::LinSpaced(2, 0.0, 1.0);
    CHECK_THROWS_AS(axis.validate(), DataError);
  }
  SUBCASE("non-monotone") {
    axis.values(2) = axis.values(1);
    CHECK_THROWS_AS(axis.validate(), DataError);
  }
  SUBCASE("descending is allowed for wavenumbers only") {
    axis.values = Vector::LinSpaced(5, 1270.0, 920.0);
    CHECK_THROWS_AS(axis.validate(), DataError);
    axis.unit = AxisUnit::wavenumber;
    CHECK_NOTHROW(axis.validate());
  }
  SUBCASE("band indices on a descending axis") {
    axis.values = Vector::LinSpaced(5, 1270.0, 920.0);
    axis.unit = AxisUnit::wavenumber;
    const auto [first, last] = axis.band_indices(Band{1000.0, 1200.0});
    CHECK(first == 1);
    CHECK(last == 3);
  }
}

TEST_CASE("spectra matrix validation") {
  SpectraMatrix a = testutil::wrap_spectra(testutil::random_matrix(3, 6, 5));
  CHECK_NOTHROW(a.validate());
  a.values(1, 1) = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(a.validate(), DataError);
}
