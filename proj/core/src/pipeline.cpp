#include "unmix/pipeline.hpp"

#include <cmath>

#include "unmix/calibrate.hpp"
#include "unmix/preprocess.hpp"

namespace unmix {

namespace {

// Seeds for nested stages are strided so annealing restart streams
// (seed + restart index) never collide across stages.
constexpr std::uint64_t kSeedStride = 1000;

Vector smooth_and_rescale(const Vector& a_hat, const WavelengthAxis& axis,
                          const SgFilterSpec& sg) {
  return max_rescale(savitsky_golay(a_hat, axis, sg));
}

// Predictions are range-scaled onto the truth's own percent range, the
// units the known amounts are stated in.
double rmse_vs_truth_percent(const Vector& pred, const Vector& truth_fractions) {
  const Vector truth_pct = truth_fractions * 100.0;
  return rmse_percent(pred, truth_pct, truth_pct.minCoeff(),
                      truth_pct.maxCoeff());
}

}  // namespace

std::pair<int, int> map_argmax(const Matrix& map) {
  Index r = 0, c = 0;
  map.maxCoeff(&r, &c);
  return {static_cast<int>(c), static_cast<int>(r)};
}

TriliquidReport run_triliquid(std::uint64_t seed,
                              const PipelineOptions& options) {
  TriliquidReport report;
  report.scenario = make_triliquid(seed);
  const auto& sc = report.scenario;
  const Index n_comp = static_cast<Index>(sc.components.size());

  McrConfig mcr_cfg;
  mcr_cfg.n_components = static_cast<int>(n_comp);
  mcr_cfg.constraints = {true, true, true};
  report.mcr = mcr_als(sc.data.data, mcr_cfg);
  const std::vector<int> mcr_match =
      match_components(report.mcr.S, sc.data.pure_spectra);

  for (Index i = 0; i < n_comp; ++i) {
    BtemConfig cfg = scenario_btem_config(
        n_comp, seed + kSeedStride * static_cast<std::uint64_t>(i + 1));
    cfg.band = sc.bands[static_cast<std::size_t>(i)];
    BtemResult recovered = btem_recover(sc.data.data, cfg);
    const Vector estimate =
        smooth_and_rescale(recovered.a_hat, sc.axis, options.smoothing);
    report.estimates.push_back(estimate);
    report.traces.push_back(std::move(recovered.objective_trace));

    const Vector truth_spectrum = sc.data.pure_spectra.row(i).transpose();
    auto& comp = report.components[static_cast<std::size_t>(i)];
    comp.btem_cosine = cosine_similarity(estimate, truth_spectrum);
    comp.procrustes = procrustes_distance(estimate, truth_spectrum);

    const TplsModel model = tpls_fit(sc.data.data, estimate, n_comp);
    const Vector truth_i = report.scenario.data.truth.col(i);
    comp.tpls_rmse = rmse_vs_truth_percent(model.m, truth_i);
    comp.cls_rmse =
        rmse_vs_truth_percent(cls_quantify(sc.data.data, estimate), truth_i);

    // MCR concentrations for the component matched to this ground truth.
    for (Index est_row = 0; est_row < n_comp; ++est_row) {
      if (mcr_match[static_cast<std::size_t>(est_row)] == static_cast<int>(i)) {
        comp.mcr_rmse =
            rmse_vs_truth_percent(report.mcr.C.col(est_row), truth_i);
      }
    }
  }
  return report;
}

DilutionReport run_dilution(std::uint64_t seed,
                            const PipelineOptions& options) {
  DilutionReport report;
  report.scenario = make_dilution(seed);
  const auto& sc = report.scenario;

  const BtemConfig cfg = scenario_btem_config(2, seed + kSeedStride);
  BtemResult recovered = btem_recover(sc.data.data, cfg);
  report.estimate =
      smooth_and_rescale(recovered.a_hat, sc.axis, options.smoothing);
  report.trace = std::move(recovered.objective_trace);

  const Vector truth_spectrum = sc.data.pure_spectra.row(1).transpose();
  report.btem_cosine = cosine_similarity(report.estimate, truth_spectrum);
  report.btem_cosine_raw = cosine_similarity(recovered.a_hat, truth_spectrum);

  const TplsModel model = tpls_fit(sc.data.data, report.estimate, 2);
  report.tpls_r2 = r_squared(sc.fractions, model.m);
  // Relative error as a percentage of the dilution range.
  report.tpls_rmse =
      rmse_percent(model.m, range_scale(sc.fractions, 0.0, 100.0), 0.0, 100.0);

  for (int k = 1; k <= 2; ++k) {
    McrConfig mcr_cfg;
    mcr_cfg.n_components = k;
    mcr_cfg.constraints = {true, true, false};
    const McrResult mcr = mcr_als(sc.data.data, mcr_cfg);
    double best = -1.0;
    for (Index i = 0; i < mcr.S.rows(); ++i) {
      if (mcr.S.row(i).norm() <= 0.0) continue;
      best = std::max(best, cosine_similarity(mcr.S.row(i).transpose(),
                                              truth_spectrum));
    }
    (k == 1 ? report.mcr1_max_cosine : report.mcr2_max_cosine) = best;
  }
  return report;
}

CubeReport run_cube(std::uint64_t seed, const PipelineOptions& options) {
  CubeReport report;
  report.scenario = make_cube(seed);
  const auto& sc = report.scenario;
  const auto& cube = sc.data.cube;
  const std::vector<int> near = sc.near_stack_pixels();

  const auto take_rows = [&](const std::vector<int>& rows) {
    SpectraMatrix subset;
    subset.axis = cube.spectra.axis;
    subset.values.resize(static_cast<Index>(rows.size()),
                         cube.spectra.n_wavelengths());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      subset.values.row(static_cast<Index>(i)) =
          cube.spectra.values.row(rows[i]);
      subset.sample_ids.push_back(cube.spectra.sample_ids[rows[i]]);
    }
    return subset;
  };

  const auto recover_map = [&](const SpectraMatrix& pixels,
                               std::uint64_t stage_seed,
                               Vector* estimate_out) {
    const BtemConfig cfg = scenario_btem_config(3, stage_seed);
    BtemResult recovered = btem_recover(pixels, cfg);
    const Vector estimate =
        smooth_and_rescale(recovered.a_hat, sc.axis, options.smoothing);
    if (estimate_out) {
      *estimate_out = estimate;
      report.trace = std::move(recovered.objective_trace);
    }
    const TplsModel model = tpls_fit(cube.spectra, estimate, 6);
    Matrix map(cube.height, cube.width);
    for (int y = 0; y < cube.height; ++y) {
      for (int x = 0; x < cube.width; ++x) {
        map(y, x) = model.m(cube.pixel_index(x, y));
      }
    }
    if (estimate_out) {
      report.ssq_x_at_L = model.ssq_x(model.L - 1);
      report.ssq_y_at_L = model.ssq_y(model.L - 1);
    }
    return map;
  };

  report.tpls_map =
      recover_map(take_rows(near), seed + kSeedStride, &report.estimate);
  report.btem_cosine =
      cosine_similarity(report.estimate, sc.data.target_spectrum);
  report.map_argmax = map_argmax(report.tpls_map);

  const auto trial = [&](const std::vector<int>& subset_of_near) {
    std::vector<int> pixel_rows;
    pixel_rows.reserve(subset_of_near.size());
    int left_out = static_cast<int>(near.size() * (near.size() - 1)) / 2;
    for (int idx : subset_of_near) {
      pixel_rows.push_back(near[idx]);
      left_out -= idx;  // identifies the trial regardless of call order
    }
    const std::uint64_t trial_seed =
        seed + kSeedStride * (2 + static_cast<std::uint64_t>(left_out));
    Matrix map = recover_map(take_rows(pixel_rows), trial_seed, nullptr);
    report.trial_argmax.push_back(map_argmax(map));
    return map;
  };
  report.jackknife = jackknife_maps(trial, static_cast<int>(near.size()));

  double near_sum = 0.0, ring_sum = 0.0;
  int near_count = 0, ring_count = 0;
  for (int y = 0; y < cube.height; ++y) {
    for (int x = 0; x < cube.width; ++x) {
      const double d = std::hypot(x - sc.plume.stack_x, y - sc.plume.stack_y);
      if (d <= 3.0) {
        near_sum += report.jackknife.sd(y, x);
        ++near_count;
      } else if (d >= 6.0) {
        ring_sum += report.jackknife.sd(y, x);
        ++ring_count;
      }
    }
  }
  report.sd_near_mean = near_sum / near_count;
  report.sd_ring_mean = ring_sum / ring_count;
  return report;
}

}  // namespace unmix
