#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "test_helpers.hpp"
#include "unmix/eval.hpp"

using namespace unmix;
using testutil::random_vector;

TEST_CASE("rmse_percent") {
  Vector truth(3);
  truth << 0.0, 50.0, 100.0;

  SUBCASE("perfect prediction scores zero") {
    CHECK(rmse_percent(truth, truth, 0.0, 100.0) == doctest::Approx(0.0));
  }
  SUBCASE("reversed prediction scores sqrt(20000/3)") {
    Vector rev(3);
    rev << 100.0, 50.0, 0.0;
    const double expected = std::sqrt((100.0 * 100.0 + 0.0 + 100.0 * 100.0) / 3.0);
    CHECK(rmse_percent(rev, truth, 0.0, 100.0) ==
          doctest::Approx(expected).epsilon(1e-12));
    CHECK(expected == doctest::Approx(81.65).epsilon(1e-4));
  }
  SUBCASE("invariant to positive affine transforms of the prediction") {
    const Vector pred = random_vector(12, 3);
    const Vector truth12 = random_vector(12, 4, 0.0, 100.0);
    const double base = rmse_percent(pred, truth12, 0.0, 100.0);
    const Vector affine = 3.7 * pred.array() + 11.0;
    CHECK(rmse_percent(affine, truth12, 0.0, 100.0) ==
          doctest::Approx(base).epsilon(1e-10));
  }
  SUBCASE("constant prediction rejected") {
    CHECK_THROWS_AS(rmse_percent(Vector::Ones(3), truth, 0.0, 100.0), DataError);
  }
}

TEST_CASE("procrustes_distance") {
  const Vector a = random_vector(25, 9);

  SUBCASE("identical shapes score zero") {
    CHECK(procrustes_distance(a, a) == doctest::Approx(0.0));
  }
  SUBCASE("sign alignment handles negated input") {
    CHECK(procrustes_distance(a, Vector(-a)) == doctest::Approx(0.0));
  }
  SUBCASE("centering removes constant offsets") {
    const Vector shifted = a.array() + 17.0;
    CHECK(procrustes_distance(a, shifted) ==
          doctest::Approx(0.0).scale(1.0).epsilon(1e-10));
  }
  SUBCASE("symmetric and scale-invariant") {
    const Vector b = random_vector(25, 10);
    const double ab = procrustes_distance(a, b);
    CHECK(procrustes_distance(b, a) == doctest::Approx(ab));
    CHECK(procrustes_distance(Vector(4.0 * a), b) == doctest::Approx(ab));
    const Vector b_offset = b.array() - 3.0;
    CHECK(procrustes_distance(a, b_offset) == doctest::Approx(ab));
  }
  SUBCASE("zero-variance input rejected") {
    CHECK_THROWS_AS(procrustes_distance(a, Vector::Ones(25)), DataError);
  }
  SUBCASE("max-rescaled variant keeps absorbance units") {
    // Positive spectra with the same shape but different gains: distance 0
    // under both conventions.
    Vector s = random_vector(25, 11, 0.5, 1.5);
    CHECK(procrustes_distance(s, Vector(2.0 * s),
                              ProcrustesScaling::max_rescaled_input) ==
          doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
    // Different shapes: the variants disagree in general.
    const Vector t = random_vector(25, 12, 0.5, 1.5);
    const double unit = procrustes_distance(s, t);
    const double maxr =
        procrustes_distance(s, t, ProcrustesScaling::max_rescaled_input);
    CHECK(unit > 0.0);
    CHECK(maxr > 0.0);
  }
}

TEST_CASE("r_squared") {
  SUBCASE("perfect linear relation scores one") {
    const Vector x = random_vector(10, 13);
    const Vector y = 2.5 * x.array() - 1.0;
    CHECK(r_squared(x, y) == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("orthogonal pair scores zero") {
    Vector x(3), y(3);
    x << 1.0, -1.0, 0.0;
    y << 1.0, 1.0, -2.0;
    CHECK(r_squared(x, y) == doctest::Approx(0.0).scale(1.0).epsilon(1e-15));
  }
  SUBCASE("zero variance rejected") {
    CHECK_THROWS_AS(r_squared(Vector::Ones(4), random_vector(4, 1)), DataError);
  }
}

TEST_CASE("jackknife_maps") {
  SUBCASE("subset-independent run gives zero sd") {
    const auto run = [](const std::vector<int>&) {
      Matrix m(1, 2);
      m << 0.0, 1.0;
      return m;
    };
    const JackknifeMaps maps = jackknife_maps(run, 3);
    CHECK(maps.mean(0, 0) == doctest::Approx(0.0));
    CHECK(maps.mean(0, 1) == doctest::Approx(1.0));
    CHECK(maps.sd.cwiseAbs().maxCoeff() == doctest::Approx(0.0));
  }
  SUBCASE("raw pooling differs from range-scaled pooling") {
    const auto run = [](const std::vector<int>& subset) {
      Matrix m(1, 2);
      m << 0.0, static_cast<double>(subset[0] + 1);  // varying gain
      return m;
    };
    const JackknifeMaps scaled = jackknife_maps(run, 4, true);
    const JackknifeMaps raw = jackknife_maps(run, 4, false);
    CHECK(scaled.sd(0, 1) == doctest::Approx(0.0));  // gain removed
    CHECK(raw.sd(0, 1) > 0.0);
  }
  SUBCASE("failures abort pooling") {
    const auto run = [](const std::vector<int>& subset) -> Matrix {
      if (subset[0] == 1) throw std::runtime_error("boom");  // trial 0 removed
      return Matrix::Zero(1, 1);
    };
    CHECK_THROWS_AS(jackknife_maps(run, 3), NumericalError);
  }
  SUBCASE("needs at least 3 samples") {
    const auto run = [](const std::vector<int>&) { return Matrix::Zero(1, 1); };
    CHECK_THROWS_AS(jackknife_maps(run, 2), DataError);
  }
}

TEST_CASE("nn_distance_cv") {
  SUBCASE("square vertices are equidistant: CV zero") {
    Matrix square(4, 2);
    square << 0, 0, 0, 1, 1, 0, 1, 1;
    CHECK(nn_distance_cv(square) == doctest::Approx(0.0));
  }
  SUBCASE("collinear equally spaced points, hand oracle") {
    Matrix line(4, 1);
    line << 0.0, 1.0, 2.0, 3.0;
    // NN distances: 1, 1, 1, 1 -> CV 0.
    CHECK(nn_distance_cv(line) == doctest::Approx(0.0));

    Matrix line5(5, 1);
    line5 << 0.0, 1.0, 2.0, 3.0, 10.0;
    // NN distances: 1, 1, 1, 1, 7. Oracle by hand with sample sd:
    // mean = 11/5; sd = sqrt(sum((d - mean)^2)/4).
    Vector d(5);
    d << 1.0, 1.0, 1.0, 1.0, 7.0;
    const double mean = d.mean();
    const double sd = std::sqrt((d.array() - mean).square().sum() / 4.0);
    CHECK(nn_distance_cv(line5) == doctest::Approx(100.0 * sd / mean).epsilon(1e-12));
  }
  SUBCASE("an outlier strictly increases the CV") {
    Matrix base(5, 2);
    base << 0, 0, 1, 0, 2, 0, 3, 0, 4, 0;
    Matrix with_outlier(6, 2);
    with_outlier << 0, 0, 1, 0, 2, 0, 3, 0, 4, 0, 40, 0;
    CHECK(nn_distance_cv(with_outlier) > nn_distance_cv(base));
  }
  SUBCASE("duplicates contribute zero distances; identical input rejected") {
    Matrix dup(4, 1);
    dup << 0.0, 0.0, 5.0, 10.0;
    CHECK(nn_distance_cv(dup) > 0.0);
    CHECK_THROWS_AS(nn_distance_cv(Matrix::Zero(4, 2)), DataError);
  }
}

TEST_CASE("cosine_similarity and component matching") {
  Vector a(3), b(3);
  a << 1.0, 0.0, 0.0;
  b << 0.0, 1.0, 0.0;
  CHECK(cosine_similarity(a, a) == doctest::Approx(1.0));
  CHECK(cosine_similarity(a, b) == doctest::Approx(0.0));
  CHECK_THROWS_AS(cosine_similarity(a, Vector::Zero(3)), DataError);

  SUBCASE("greedy matching is a bijection aligned with the best pairs") {
    Matrix truth(3, 4);
    truth << 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0;
    Matrix est(3, 4);
    est.row(0) = truth.row(2);
    est.row(1) = truth.row(0);
    est.row(2) = truth.row(1);
    const auto match = match_components(est, truth);
    CHECK(match[0] == 2);
    CHECK(match[1] == 0);
    CHECK(match[2] == 1);
    // Bijection.
    std::vector<bool> seen(3, false);
    for (int m : match) {
      CHECK(!seen[static_cast<std::size_t>(m)]);
      seen[static_cast<std::size_t>(m)] = true;
    }
  }
}
