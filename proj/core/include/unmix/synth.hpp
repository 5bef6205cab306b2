#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "unmix/types.hpp"

namespace unmix {

struct Peak {
  double center = 0.0;  // axis units
  double width = 1.0;   // Gaussian sd, axis units
  double height = 1.0;
};

struct ComponentSpec {
  std::vector<Peak> peaks;
  std::string name;
};

struct Scatter {
  double multiplicative_sd = 0.0;  // per-sample gain 1 + N(0, sd)
  double additive_sd = 0.0;        // per-sample offset N(0, sd)
};

struct MixtureDesign {
  Matrix concentrations;  // n_designs x n_components fractions
  int replicates = 1;
  double noise_sd = 0.0;  // i.i.d. per-entry
  std::optional<Scatter> scatter;
  std::uint64_t seed = 0;
};

// Sum of Gaussian peaks evaluated on the axis.
Vector gaussian_spectrum(const ComponentSpec& spec, const WavelengthAxis& axis);

// Every closed composition on a grid of `levels` fractions per component
// (levels=5 -> steps of 25%). Rows sum to one. exclude_pure drops vertices
// where a single component sits at fraction one.
Matrix simplex_design(int levels, int n_components, bool exclude_pure);

struct SynthResult {
  SpectraMatrix data;
  Matrix truth;          // concentrations actually mixed, replicates included
  Matrix pure_spectra;   // k x p rows, the noise-free component spectra
};

// Beer-Lambert mixing A = C*S, then optional per-sample multiplicative and
// additive scatter, then i.i.d. noise. Bit-reproducible per seed; the truth
// matrix is the exact C used for mixing.
SynthResult synthesize(const std::vector<ComponentSpec>& components,
                       const MixtureDesign& design, const WavelengthAxis& axis);

struct PlumeSpec {
  int stack_x = 0;
  int stack_y = 0;
  double sigma = 2.0;      // pixels
  double amplitude = 1.0;  // peak concentration at the stack
};

// height x width Gaussian intensity field centered at the stack pixel.
Matrix gaussian_plume(int width, int height, const PlumeSpec& plume);

// Background mixture whose component weights vary linearly across the image:
// w_i(x, y) = base + dx * x/(W-1) + dy * y/(H-1), clipped at zero.
struct BackgroundField {
  std::vector<ComponentSpec> components;
  std::vector<std::array<double, 3>> weights;  // {base, dx, dy} per component

  double weight_at(std::size_t i, int x, int y, int width, int height) const;
};

struct CubeResult {
  HyperCube cube;
  Matrix truth_map;        // height x width plume intensities
  Vector target_spectrum;  // noise-free target on the axis
};

// Per-pixel spectrum = background(x, y) + plume(y, x) * target + noise, in
// row-major pixel order.
CubeResult synth_hypercube(int width, int height, const Matrix& plume,
                           const BackgroundField& background,
                           const ComponentSpec& target, double noise_sd,
                           std::uint64_t seed, const WavelengthAxis& axis);

}  // namespace unmix
