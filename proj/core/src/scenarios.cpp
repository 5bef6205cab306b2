#include "unmix/scenarios.hpp"

#include <cmath>

namespace unmix {

BtemConfig scenario_btem_config(Index k, std::uint64_t seed) {
  BtemConfig cfg;
  cfg.k = k;
  cfg.seed = seed;
  return cfg;  // schedule and weights at their defaults
}

TriliquidScenario make_triliquid(std::uint64_t seed) {
  TriliquidScenario s;
  s.axis = make_uniform_axis(1100.0, 2500.0, 200);

  // Each component owns the tallest peak in its targeted band; the shared
  // 1800-2000 nm region creates the spectral overlap that breaks
  // single-spectrum classical least squares.
  s.components = {
      {{{1320.0, 28.0, 1.0}, {1880.0, 55.0, 0.50}}, "compA"},
      {{{1620.0, 32.0, 1.0}, {1940.0, 55.0, 0.30}}, "compB"},
      {{{2240.0, 45.0, 1.0}, {1840.0, 65.0, 0.15}}, "compC"},
  };
  s.bands = {{1260.0, 1380.0}, {1560.0, 1680.0}, {2180.0, 2300.0}};

  MixtureDesign design;
  design.concentrations = simplex_design(5, 3, /*exclude_pure=*/true);
  design.replicates = 2;
  design.seed = seed;

  // Noise at 1% of the strongest mixture signal.
  MixtureDesign noiseless = design;
  noiseless.noise_sd = 0.0;
  const SynthResult clean = synthesize(s.components, noiseless, s.axis);
  design.noise_sd = 0.01 * clean.data.values.maxCoeff();

  s.data = synthesize(s.components, design, s.axis);
  return s;
}

DilutionScenario make_dilution(std::uint64_t seed) {
  DilutionScenario s;
  s.axis = make_uniform_axis(1600.0, 2400.0, 150);

  // Broad multi-band base material vs a sharply peaked trace contaminant.
  s.base = {{{1730.0, 90.0, 0.90}, {1940.0, 110.0, 1.0}, {2250.0, 120.0, 0.75}},
            "base"};
  s.contaminant = {{{1685.0, 14.0, 0.55}, {2060.0, 12.0, 1.0}, {2175.0, 16.0, 0.70}},
                   "contaminant"};

  s.fractions.resize(5);
  s.fractions << 0.0005, 0.001, 0.005, 0.01, 0.02;

  MixtureDesign design;
  design.concentrations.resize(5, 2);
  for (Index i = 0; i < 5; ++i) {
    design.concentrations(i, 0) = 1.0 - s.fractions(i);
    design.concentrations(i, 1) = s.fractions(i);
  }
  design.replicates = 1;
  design.scatter = Scatter{0.02, 0.0};  // 2% multiplicative scatter
  design.noise_sd = 2e-4;
  design.seed = seed;

  s.data = synthesize({s.base, s.contaminant}, design, s.axis);
  return s;
}

CubeScenario make_cube(std::uint64_t seed) {
  CubeScenario s;
  // 36 channels, wavenumbers descending as the instrument reports them.
  s.axis = make_uniform_axis(1270.0, 920.0, 36, AxisUnit::wavenumber);

  s.background.components = {
      {{{1000.0, 60.0, 1.0}, {1180.0, 80.0, 0.60}}, "bg_soil"},
      {{{1100.0, 70.0, 0.80}, {950.0, 50.0, 0.50}}, "bg_sky"},
  };
  // Weights drift across the image: one component grows left to right, the
  // other top to bottom.
  s.background.weights = {{0.70, 0.30, 0.0}, {0.60, 0.0, 0.40}};

  s.target = {{{1050.0, 12.0, 1.0}, {1230.0, 14.0, 0.60}}, "target_vapor"};
  s.plume = PlumeSpec{9, 8, 2.2, 0.35};

  const int width = 16;
  const int height = 16;
  const Matrix plume = gaussian_plume(width, height, s.plume);
  s.data = synth_hypercube(width, height, plume, s.background, s.target, 0.005,
                           seed, s.axis);
  return s;
}

std::vector<int> CubeScenario::near_stack_pixels(double radius) const {
  std::vector<int> pixels;
  for (int y = 0; y < data.cube.height; ++y) {
    for (int x = 0; x < data.cube.width; ++x) {
      const double dx = x - plume.stack_x;
      const double dy = y - plume.stack_y;
      if (std::sqrt(dx * dx + dy * dy) <= radius) {
        pixels.push_back(static_cast<int>(data.cube.pixel_index(x, y)));
      }
    }
  }
  return pixels;
}

}  // namespace unmix
