#pragma once

#include <cstdint>
#include <vector>

#include "unmix/btem.hpp"
#include "unmix/synth.hpp"
#include "unmix/types.hpp"

namespace unmix {

// Canned synthetic studies with known ground truth, shared by the pipeline
// command, the regression tests, and the acceptance suite. All parameters
// are frozen here; only the seed varies.

// Three overlapping components on a 25% closed mixture grid without pure
// vertices, measured in duplicate, 1% noise.
struct TriliquidScenario {
  WavelengthAxis axis;
  std::vector<ComponentSpec> components;
  std::vector<Band> bands;  // one targeted band per component
  SynthResult data;
};

TriliquidScenario make_triliquid(std::uint64_t seed);

// Serial dilution of a trace contaminant in a dominant base material with
// multiplicative scatter: five samples at 0.05/0.1/0.5/1/2% mass fraction.
struct DilutionScenario {
  WavelengthAxis axis;
  ComponentSpec base;
  ComponentSpec contaminant;
  Vector fractions;  // contaminant mass fractions
  SynthResult data;  // component order: base, contaminant
};

DilutionScenario make_dilution(std::uint64_t seed);

// 16 x 16 x 36 hyperspectral cube: two-component background drifting across
// the image plus a Gaussian plume of the target centered at the stack pixel.
struct CubeScenario {
  WavelengthAxis axis;
  BackgroundField background;
  ComponentSpec target;
  PlumeSpec plume;
  CubeResult data;

  // Row-major pixel indices within `radius` of the stack.
  std::vector<int> near_stack_pixels(double radius = 1.5) const;
};

CubeScenario make_cube(std::uint64_t seed);

// BTEM configuration used by the scenario pipelines.
BtemConfig scenario_btem_config(Index k, std::uint64_t seed);

}  // namespace unmix
