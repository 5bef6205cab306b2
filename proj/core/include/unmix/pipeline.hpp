#pragma once

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include "unmix/eval.hpp"
#include "unmix/mcr.hpp"
#include "unmix/scenarios.hpp"

namespace unmix {

// End-to-end scenario runs: synth -> btem -> smoothing -> calibration ->
// metrics. These return plain metric structs; the CLI serializes them and
// the acceptance suite asserts on them, so both see identical numbers.

struct PipelineOptions {
  SgFilterSpec smoothing{11, 2, 0};
};

struct TriliquidComponentReport {
  double btem_cosine = 0.0;      // smoothed estimate vs true spectrum
  double procrustes = 0.0;       // unit-norm variant
  double tpls_rmse = 0.0;        // percent, on the truth's own range
  double cls_rmse = 0.0;
  double mcr_rmse = 0.0;
};

struct TriliquidReport {
  TriliquidScenario scenario;
  std::array<TriliquidComponentReport, 3> components;
  std::vector<Vector> estimates;       // smoothed, max-rescaled, per component
  std::vector<ObjectiveTrace> traces;  // annealing traces, per component
  McrResult mcr;
};

TriliquidReport run_triliquid(std::uint64_t seed,
                              const PipelineOptions& options = {});

struct DilutionReport {
  DilutionScenario scenario;
  Vector estimate;            // smoothed, max-rescaled
  ObjectiveTrace trace;
  double btem_cosine = 0.0;   // vs the true contaminant spectrum
  double btem_cosine_raw = 0.0;  // before smoothing
  double tpls_r2 = 0.0;       // actual vs predicted over the dilution series
  double tpls_rmse = 0.0;     // relative RMSE, percent of the dilution range
  double mcr1_max_cosine = 0.0;  // best contaminant match, 1-component model
  double mcr2_max_cosine = 0.0;  // best contaminant match, 2-component model
};

DilutionReport run_dilution(std::uint64_t seed,
                            const PipelineOptions& options = {});

struct CubeReport {
  CubeScenario scenario;
  Vector estimate;           // smoothed, max-rescaled
  ObjectiveTrace trace;      // main recovery annealing trace
  double btem_cosine = 0.0;  // vs the true target spectrum
  double ssq_y_at_L = 0.0;
  double ssq_x_at_L = 0.0;
  Matrix tpls_map;           // height x width abundance map
  std::pair<int, int> map_argmax;  // (x, y)
  std::vector<std::pair<int, int>> trial_argmax;  // per jackknife trial
  JackknifeMaps jackknife;
  double sd_near_mean = 0.0;  // mean sd within 3 px of the stack
  double sd_ring_mean = 0.0;  // mean sd at >= 6 px from the stack
};

CubeReport run_cube(std::uint64_t seed, const PipelineOptions& options = {});

// (x, y) of the largest entry of a height x width map.
std::pair<int, int> map_argmax(const Matrix& map);

}  // namespace unmix
