#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "test_helpers.hpp"
#include "unmix/scenarios.hpp"
#include "unmix/synth.hpp"

using namespace unmix;
using testutil::simple_axis;

TEST_CASE("gaussian_spectrum") {
  const auto axis = simple_axis(201, 0.0, 1.0);

  SUBCASE("unit peak evaluates to its height at the center") {
    const Vector s = gaussian_spectrum({{{100.0, 5.0, 1.0}}, ""}, axis);
    CHECK(s(100) == doctest::Approx(1.0));
  }
  SUBCASE("disjoint peaks add pointwise") {
    const ComponentSpec two{{{50.0, 3.0, 1.0}, {150.0, 3.0, 0.5}}, ""};
    const Vector s = gaussian_spectrum(two, axis);
    const Vector a = gaussian_spectrum({{{50.0, 3.0, 1.0}}, ""}, axis);
    const Vector b = gaussian_spectrum({{{150.0, 3.0, 0.5}}, ""}, axis);
    CHECK((s - a - b).cwiseAbs().maxCoeff() < 1e-15);
  }
  SUBCASE("area matches height*width*sqrt(2*pi) by quadrature") {
    const double width = 4.0, height = 2.0;
    const Vector s = gaussian_spectrum({{{100.0, width, height}}, ""}, axis);
    const double area = s.sum() * 1.0;  // trapezoid on unit spacing
    const double expected = height * width * std::sqrt(2.0 * std::numbers::pi);
    CHECK(area == doctest::Approx(expected).epsilon(1e-6));
  }
  SUBCASE("invalid peaks rejected") {
    CHECK_THROWS_AS(gaussian_spectrum({{{10.0, 0.0, 1.0}}, ""}, axis), DataError);
    CHECK_THROWS_AS(gaussian_spectrum({{{10.0, 1.0, -1.0}}, ""}, axis), DataError);
  }
}

TEST_CASE("simplex_design") {
  SUBCASE("3 components on the 25% grid") {
    const Matrix full = simplex_design(5, 3, false);
    CHECK(full.rows() == 15);
    const Matrix open = simplex_design(5, 3, true);
    CHECK(open.rows() == 12);
    for (Index i = 0; i < open.rows(); ++i) {
      CHECK(open.row(i).sum() == doctest::Approx(1.0).epsilon(1e-12));
      CHECK(open.row(i).maxCoeff() < 1.0);  // no pure vertex
    }
  }
  SUBCASE("2 components at 2 levels") {
    const Matrix d = simplex_design(2, 2, false);
    CHECK(d.rows() == 2);
    CHECK(d.minCoeff() == 0.0);
    CHECK(d.maxCoeff() == 1.0);
  }
  SUBCASE("oracle count: compositions of the grid total") {
    // Enumerating compositions of 4 units into 3 parts by hand gives 15.
    int count = 0;
    for (int i = 0; i <= 4; ++i)
      for (int j = 0; i + j <= 4; ++j) ++count;
    CHECK(simplex_design(5, 3, false).rows() == count);
  }
}

TEST_CASE("synthesize") {
  const auto axis = simple_axis(80, 1000.0, 2.0);
  const std::vector<ComponentSpec> comps = {
      {{{1040.0, 10.0, 1.0}}, "a"},
      {{{1120.0, 12.0, 0.8}}, "b"},
  };

  SUBCASE("zero noise reproduces C*S exactly") {
    MixtureDesign d;
    d.concentrations = simplex_design(3, 2, false);
    const SynthResult r = synthesize(comps, d, axis);
    CHECK((r.data.values - r.truth * r.pure_spectra).cwiseAbs().maxCoeff() ==
          0.0);
  }

  SUBCASE("noise magnitude follows the half-normal mean") {
    MixtureDesign d;
    d.concentrations = Matrix::Constant(100, 2, 0.5);
    d.replicates = 1;
    d.noise_sd = 0.05;
    d.seed = 2024;
    const SynthResult r = synthesize(comps, d, axis);
    const Matrix resid = r.data.values - r.truth * r.pure_spectra;
    const double mean_abs = resid.cwiseAbs().mean();
    const double expected = d.noise_sd * std::sqrt(2.0 / std::numbers::pi);
    CHECK(std::abs(mean_abs - expected) / expected < 0.05);
  }

  SUBCASE("replicates duplicate the design with fresh noise") {
    MixtureDesign d;
    d.concentrations = simplex_design(3, 2, false);
    d.replicates = 2;
    d.noise_sd = 0.01;
    d.seed = 5;
    const SynthResult r = synthesize(comps, d, axis);
    const Index block = d.concentrations.rows();
    CHECK(r.data.values.rows() == 2 * block);
    CHECK((r.truth.topRows(block) - r.truth.bottomRows(block)).norm() == 0.0);
    CHECK((r.data.values.topRows(block) - r.data.values.bottomRows(block))
              .norm() > 0.0);
  }

  SUBCASE("bit-reproducible per seed, different across seeds") {
    MixtureDesign d;
    d.concentrations = simplex_design(3, 2, false);
    d.noise_sd = 0.02;
    d.scatter = Scatter{0.01, 0.001};
    d.seed = 11;
    const SynthResult r1 = synthesize(comps, d, axis);
    const SynthResult r2 = synthesize(comps, d, axis);
    CHECK((r1.data.values - r2.data.values).cwiseAbs().maxCoeff() == 0.0);
    d.seed = 12;
    const SynthResult r3 = synthesize(comps, d, axis);
    CHECK((r1.data.values - r3.data.values).cwiseAbs().maxCoeff() > 0.0);
  }
}

TEST_CASE("dilution scenario mirrors the serial-dilution regime") {
  const DilutionScenario sc = make_dilution(9);
  REQUIRE(sc.fractions.size() == 5);
  CHECK(sc.fractions(0) == doctest::Approx(0.0005));
  CHECK(sc.fractions(4) == doctest::Approx(0.02));
  // Truth columns: base + contaminant sum to one.
  for (Index i = 0; i < sc.data.truth.rows(); ++i) {
    CHECK(sc.data.truth.row(i).sum() == doctest::Approx(1.0));
  }
}

TEST_CASE("gaussian_plume and synth_hypercube") {
  const PlumeSpec plume{9, 8, 2.0, 0.4};
  const Matrix field = gaussian_plume(16, 16, plume);

  SUBCASE("peak sits at the stack pixel") {
    Index r = 0, c = 0;
    field.maxCoeff(&r, &c);
    CHECK(static_cast<int>(c) == plume.stack_x);
    CHECK(static_cast<int>(r) == plume.stack_y);
    CHECK(field(plume.stack_y, plume.stack_x) == doctest::Approx(0.4));
  }

  const auto axis = make_uniform_axis(1270.0, 920.0, 36, AxisUnit::wavenumber);
  BackgroundField bg;
  bg.components = {{{{1000.0, 50.0, 1.0}}, "bg"}};
  bg.weights = {{1.0, 0.5, 0.0}};
  const ComponentSpec target{{{1100.0, 15.0, 1.0}}, "t"};

  SUBCASE("zero plume leaves pure background") {
    const Matrix none = Matrix::Zero(16, 16);
    const CubeResult r = synth_hypercube(16, 16, none, bg, target, 0.0, 1, axis);
    const Vector bg_spec = gaussian_spectrum(bg.components[0], axis);
    // Pixel (0, 0): weight 1.0 exactly.
    CHECK((r.cube.spectra.values.row(0).transpose() - bg_spec).cwiseAbs().maxCoeff() <
          1e-12);
    CHECK(r.truth_map.cwiseAbs().maxCoeff() == 0.0);
  }

  SUBCASE("truth map argmax is the stack pixel and shapes line up") {
    const CubeResult r =
        synth_hypercube(16, 16, field, bg, target, 0.005, 2, axis);
    Index rr = 0, cc = 0;
    r.truth_map.maxCoeff(&rr, &cc);
    CHECK(static_cast<int>(cc) == plume.stack_x);
    CHECK(static_cast<int>(rr) == plume.stack_y);
    CHECK(r.cube.spectra.n_samples() == 256);
    CHECK(r.cube.spectra.n_wavelengths() == 36);
    // Row-major order: pixel (x, y) = sample y*W + x.
    CHECK(r.cube.pixel_index(3, 2) == 35);
  }
}

TEST_CASE("cube scenario mirrors the quarter-scale imaging shape") {
  const CubeScenario sc = make_cube(4);
  CHECK(sc.data.cube.width == 16);
  CHECK(sc.data.cube.height == 16);
  CHECK(sc.axis.size() == 36);
  CHECK(sc.axis.unit == AxisUnit::wavenumber);
  const auto near = sc.near_stack_pixels();
  CHECK(near.size() >= 5);  // stack plus its 4-neighborhood at least
}

TEST_CASE("triliquid scenario: no pure training vertices") {
  const TriliquidScenario sc = make_triliquid(3);
  CHECK(sc.data.truth.rows() == 24);  // 12 compositions in duplicate
  CHECK(sc.data.truth.maxCoeff() <= 0.75);
  for (Index i = 0; i < sc.data.truth.rows(); ++i) {
    CHECK(sc.data.truth.row(i).sum() == doctest::Approx(1.0));
  }
}
