#include "unmix/cli.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "unmix/btem.hpp"
#include "unmix/calibrate.hpp"
#include "unmix/decompose.hpp"
#include "unmix/eval.hpp"
#include "unmix/heatmap.hpp"
#include "unmix/io.hpp"
#include "unmix/mcr.hpp"
#include "unmix/pipeline.hpp"
#include "unmix/preprocess.hpp"
#include "unmix/synth.hpp"
#include "unmix/version.hpp"

namespace unmix::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

std::string join_args(const std::vector<std::string>& args) {
  std::string out = "unmix";
  for (const auto& a : args) {
    out += ' ';
    out += a;
  }
  return out;
}

Band parse_band(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) {
    throw DataError("band must be lo:hi, got '" + text + "'");
  }
  try {
    return Band{std::stod(text.substr(0, colon)),
                std::stod(text.substr(colon + 1))};
  } catch (const std::exception&) {
    throw DataError("band must be numeric lo:hi, got '" + text + "'");
  }
}

std::pair<double, double> parse_range(const std::string& text) {
  const Band b = parse_band(text);
  return {b.lo, b.hi};
}

McrConstraints parse_constraints(const std::string& text) {
  McrConstraints c{false, false, false};
  std::istringstream in(text);
  std::string token;
  while (std::getline(in, token, ',')) {
    if (token == "nonneg") {
      c.nonneg_C = c.nonneg_S = true;
    } else if (token == "nonneg_c") {
      c.nonneg_C = true;
    } else if (token == "nonneg_s") {
      c.nonneg_S = true;
    } else if (token == "closure") {
      c.closure_C = true;
    } else if (!token.empty()) {
      throw DataError("unknown constraint '" + token + "'");
    }
  }
  return c;
}

Table vector_table(const Vector& v, const std::vector<std::string>& ids,
                   const std::string& column) {
  Table t;
  t.columns = {column};
  t.values = v;
  for (Index i = 0; i < v.size(); ++i) {
    t.row_ids.push_back(i < static_cast<Index>(ids.size())
                            ? ids[static_cast<std::size_t>(i)]
                            : "s" + std::to_string(i));
  }
  return t;
}

void write_trace_csv(const std::string& path, const ObjectiveTrace& trace,
                     const Provenance& prov) {
  Table t;
  t.columns = {"objective"};
  t.values.resize(static_cast<Index>(trace.size()), 1);
  for (std::size_t i = 0; i < trace.size(); ++i) {
    t.row_ids.push_back(std::to_string(trace[i].first));
    t.values(static_cast<Index>(i), 0) = trace[i].second;
  }
  write_table_csv(path, t, prov);
}

json provenance_json(const Provenance& p) {
  json j;
  j["command"] = p.command;
  j["version"] = p.version;
  if (p.has_seed) j["seed"] = p.seed;
  json inputs = json::object();
  for (const auto& [name, digest] : p.inputs) inputs[name] = digest;
  j["inputs"] = inputs;
  return j;
}

void write_json(const std::string& path, const json& j) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw DataError("cannot write " + path);
  }
  out << j.dump(2) << '\n';
}

// ---------------------------------------------------------------------------
// Option bundles shared by several subcommands.

struct SeedOpt {
  std::uint64_t value = 0;
  void attach(CLI::App* cmd) {
    cmd->add_option("--seed", value, "Random seed")
        ->envname("UNMIX_SEED")
        ->capture_default_str();
  }
};

struct SgOpts {
  int window = 11;
  int order = 2;
  int deriv = 0;
  void attach(CLI::App* cmd) {
    cmd->add_option("--sg-window", window, "Savitsky-Golay window (odd)")
        ->capture_default_str();
    cmd->add_option("--sg-order", order, "Savitsky-Golay polynomial order")
        ->capture_default_str();
    cmd->add_option("--sg-deriv", deriv, "Savitsky-Golay derivative order")
        ->capture_default_str();
  }
  SgFilterSpec spec() const { return SgFilterSpec{window, order, deriv}; }
};

struct AnnealOpts {
  AnnealSchedule schedule;
  void attach(CLI::App* cmd) {
    cmd->add_option("--t-initial", schedule.t_initial, "Initial temperature")
        ->capture_default_str();
    cmd->add_option("--t-final", schedule.t_final, "Final temperature")
        ->capture_default_str();
    cmd->add_option("--cooling", schedule.cooling, "Geometric cooling factor")
        ->capture_default_str();
    cmd->add_option("--steps", schedule.steps_per_temperature,
                    "Steps per temperature")
        ->capture_default_str();
    cmd->add_option("--step-scale", schedule.step_scale,
                    "Proposal scale at the initial temperature")
        ->capture_default_str();
    cmd->add_option("--restarts", schedule.restarts, "Annealing restarts")
        ->capture_default_str();
  }
};

// ---------------------------------------------------------------------------

int run_impl(const std::vector<std::string>& args) {
  CLI::App app{"Curve resolution and one-at-a-time calibration toolkit"};
  app.set_config("--config", "", "Flat key=value config file; flags win");
  app.require_subcommand(1);

  Provenance prov;
  prov.version = kVersion;
  prov.command = join_args(args);

  // ---- svd ----------------------------------------------------------------
  auto* svd_cmd = app.add_subcommand("svd", "Singular value decomposition");
  struct {
    std::string input, out_u, out_s, out_v;
    int k = 0;
  } svd_opt;
  svd_cmd->add_option("--input", svd_opt.input, "Spectra CSV")->required();
  svd_cmd->add_option("--k", svd_opt.k, "Truncate to k singular values");
  svd_cmd->add_option("--out-u", svd_opt.out_u, "Scores CSV");
  svd_cmd->add_option("--out-s", svd_opt.out_s, "Singular values CSV");
  svd_cmd->add_option("--out-v", svd_opt.out_v, "Loadings CSV");

  // ---- scree --------------------------------------------------------------
  auto* scree_cmd = app.add_subcommand("scree", "Singular values vs index");
  struct {
    std::string input, out;
  } scree_opt;
  scree_cmd->add_option("--input", scree_opt.input, "Spectra CSV")->required();
  scree_cmd->add_option("--out", scree_opt.out, "Output CSV (default stdout)");

  // ---- btem ---------------------------------------------------------------
  auto* btem_cmd =
      app.add_subcommand("btem", "Band target entropy minimization recovery");
  struct {
    std::string input, out, trace, band, norm = "max";
    int k = 0;
    int deriv_order = 1;
    double gamma = 100.0;
    bool sg_deriv = false;
  } btem_opt;
  SeedOpt btem_seed;
  SgOpts btem_sg;
  AnnealOpts btem_anneal;
  btem_cmd->add_option("--input", btem_opt.input, "Spectra CSV")->required();
  btem_cmd->add_option("--k", btem_opt.k, "Retained singular values (default: full rank)");
  btem_cmd->add_option("--band", btem_opt.band, "Targeted band lo:hi");
  btem_cmd->add_option("--deriv-order", btem_opt.deriv_order,
                       "Objective derivative order")
      ->capture_default_str();
  btem_cmd->add_option("--norm", btem_opt.norm, "Derivative normalization: max|sum")
      ->capture_default_str();
  btem_cmd->add_option("--gamma", btem_opt.gamma, "Non-negativity penalty weight")
      ->capture_default_str();
  btem_cmd->add_flag("--sg-derivative", btem_opt.sg_deriv,
                     "Differentiate with the Savitsky-Golay filter");
  btem_seed.attach(btem_cmd);
  btem_sg.attach(btem_cmd);
  btem_anneal.attach(btem_cmd);
  btem_cmd->add_option("--out", btem_opt.out, "Recovered spectrum CSV")->required();
  btem_cmd->add_option("--trace", btem_opt.trace, "Objective trace CSV");

  // ---- tpls ---------------------------------------------------------------
  auto* tpls_cmd = app.add_subcommand("tpls", "Target PLS semiquantification");
  struct {
    std::string input, target, out, ssq, scale;
    int projections = 0;
    double select_threshold = 0.0;
    bool center = false;
  } tpls_opt;
  tpls_cmd->add_option("--input", tpls_opt.input, "Spectra CSV")->required();
  tpls_cmd->add_option("--target", tpls_opt.target, "Target spectrum CSV")
      ->required();
  tpls_cmd->add_option("--projections", tpls_opt.projections,
                       "Latent projections");
  tpls_cmd->add_option("--select-threshold", tpls_opt.select_threshold,
                       "Pick projections at this %-variance threshold instead");
  tpls_cmd->add_option("--scale", tpls_opt.scale,
                       "Range-scale predictions to lo:hi");
  tpls_cmd->add_flag("--center", tpls_opt.center, "Mean-center before fitting");
  tpls_cmd->add_option("--out", tpls_opt.out, "Predictions CSV")->required();
  tpls_cmd->add_option("--ssq", tpls_opt.ssq, "Variance-explained trace CSV");

  // ---- cls ----------------------------------------------------------------
  auto* cls_cmd =
      app.add_subcommand("cls", "Classical least squares against one spectrum");
  struct {
    std::string input, target, out, scale;
  } cls_opt;
  cls_cmd->add_option("--input", cls_opt.input, "Spectra CSV")->required();
  cls_cmd->add_option("--target", cls_opt.target, "Target spectrum CSV")
      ->required();
  cls_cmd->add_option("--scale", cls_opt.scale, "Range-scale estimates to lo:hi");
  cls_cmd->add_option("--out", cls_opt.out, "Estimates CSV")->required();

  // ---- mcr ----------------------------------------------------------------
  auto* mcr_cmd = app.add_subcommand("mcr", "MCR-ALS factorization");
  struct {
    std::string input, out_c, out_s, constraints = "nonneg,closure";
    std::string init = "simplisma", s0;
    int components = 0;
    int max_iter = 500;
    double tol = 1e-8;
    double alpha = 0.05;
  } mcr_opt;
  SeedOpt mcr_seed;
  mcr_cmd->add_option("--input", mcr_opt.input, "Spectra CSV")->required();
  mcr_cmd->add_option("--components", mcr_opt.components, "Component count")
      ->required();
  mcr_cmd->add_option("--constraints", mcr_opt.constraints,
                      "Comma list: nonneg,nonneg_c,nonneg_s,closure")
      ->capture_default_str();
  mcr_cmd->add_option("--init", mcr_opt.init, "simplisma|random|provided")
      ->capture_default_str();
  mcr_cmd->add_option("--s0", mcr_opt.s0, "Initial spectra CSV (init=provided)");
  mcr_cmd->add_option("--alpha", mcr_opt.alpha, "SIMPLISMA noise fraction")
      ->capture_default_str();
  mcr_cmd->add_option("--max-iter", mcr_opt.max_iter, "Iteration cap")
      ->capture_default_str();
  mcr_cmd->add_option("--tol", mcr_opt.tol, "Relative lack-of-fit tolerance")
      ->capture_default_str();
  mcr_seed.attach(mcr_cmd);
  mcr_cmd->add_option("--out-c", mcr_opt.out_c, "Concentration profiles CSV")
      ->required();
  mcr_cmd->add_option("--out-s", mcr_opt.out_s, "Spectra CSV")->required();

  // ---- simplisma ----------------------------------------------------------
  auto* simp_cmd =
      app.add_subcommand("simplisma", "Purest-variable initial spectra");
  struct {
    std::string input, out;
    int components = 0;
    double alpha = 0.05;
  } simp_opt;
  simp_cmd->add_option("--input", simp_opt.input, "Spectra CSV")->required();
  simp_cmd->add_option("--components", simp_opt.components, "Component count")
      ->required();
  simp_cmd->add_option("--alpha", simp_opt.alpha, "Noise fraction")
      ->capture_default_str();
  simp_cmd->add_option("--out", simp_opt.out, "Initial spectra CSV")->required();

  // ---- synth --------------------------------------------------------------
  auto* synth_cmd = app.add_subcommand("synth", "Generate a synthetic dataset");
  struct {
    std::string scenario, out;
  } synth_opt;
  SeedOpt synth_seed;
  synth_cmd
      ->add_option("scenario", synth_opt.scenario, "triliquid|dilution|cube")
      ->required();
  synth_seed.attach(synth_cmd);
  synth_cmd->add_option("--out", synth_opt.out, "Output directory")->required();

  // ---- eval ---------------------------------------------------------------
  auto* eval_cmd = app.add_subcommand("eval", "Comparison metrics");
  eval_cmd->require_subcommand(1);

  auto* rmse_cmd = eval_cmd->add_subcommand("rmse", "Range-scaled percent RMSE");
  struct {
    std::string pred, truth, out, scale = "0:100";
    int pred_col = 0;
    int truth_col = 0;
  } rmse_opt;
  rmse_cmd->add_option("--pred", rmse_opt.pred, "Predictions table CSV")
      ->required();
  rmse_cmd->add_option("--truth", rmse_opt.truth, "Truth table CSV")->required();
  rmse_cmd->add_option("--pred-col", rmse_opt.pred_col, "Prediction column")
      ->capture_default_str();
  rmse_cmd->add_option("--truth-col", rmse_opt.truth_col, "Truth column")
      ->capture_default_str();
  rmse_cmd->add_option("--scale", rmse_opt.scale, "Range lo:hi")
      ->capture_default_str();
  rmse_cmd->add_option("--out", rmse_opt.out, "Report JSON");

  auto* proc_cmd = eval_cmd->add_subcommand("procrustes", "Shape distance");
  struct {
    std::string a, b, out;
    bool max_rescaled = false;
  } proc_opt;
  proc_cmd->add_option("--a", proc_opt.a, "Spectrum CSV")->required();
  proc_cmd->add_option("--b", proc_opt.b, "Spectrum CSV")->required();
  proc_cmd->add_flag("--max-rescaled", proc_opt.max_rescaled,
                     "Max-rescale inputs instead of unit-norm scaling");
  proc_cmd->add_option("--out", proc_opt.out, "Report JSON");

  auto* nncv_cmd = eval_cmd->add_subcommand(
      "nncv", "Nearest-neighbor distance coefficient of variation");
  struct {
    std::string scores, input, band, out;
    int k = 3;
  } nncv_opt;
  nncv_cmd->add_option("--scores", nncv_opt.scores, "Score matrix CSV (raw)");
  nncv_cmd->add_option("--input", nncv_opt.input,
                       "Spectra CSV (PCA scores computed here)");
  nncv_cmd->add_option("--k", nncv_opt.k, "PCA score count")
      ->capture_default_str();
  nncv_cmd->add_option("--band", nncv_opt.band, "Restrict PCA to band lo:hi");
  nncv_cmd->add_option("--out", nncv_opt.out, "Report JSON");

  auto* jack_cmd = eval_cmd->add_subcommand(
      "jackknife", "Leave-one-out recovery/calibration maps for a cube");
  struct {
    std::string cube, out;
    std::string stack;
    double radius = 1.5;
    int k = 3;
    int projections = 6;
  } jack_opt;
  SeedOpt jack_seed;
  SgOpts jack_sg;
  jack_cmd->add_option("--cube", jack_opt.cube, "Cube CSV (+ .json sidecar)")
      ->required();
  jack_cmd->add_option("--stack", jack_opt.stack, "Stack pixel x,y")->required();
  jack_cmd->add_option("--radius", jack_opt.radius, "Near-stack radius, px")
      ->capture_default_str();
  jack_cmd->add_option("--k", jack_opt.k, "Singular values for recovery")
      ->capture_default_str();
  jack_cmd->add_option("--projections", jack_opt.projections,
                       "Latent projections for calibration")
      ->capture_default_str();
  jack_seed.attach(jack_cmd);
  jack_sg.attach(jack_cmd);
  jack_cmd->add_option("--out", jack_opt.out, "Output directory")->required();

  // ---- pipeline -----------------------------------------------------------
  auto* pipe_cmd =
      app.add_subcommand("pipeline", "End-to-end scenario reproduction");
  struct {
    std::string scenario, out;
  } pipe_opt;
  SeedOpt pipe_seed;
  SgOpts pipe_sg;
  pipe_cmd->add_option("scenario", pipe_opt.scenario, "triliquid|dilution|cube")
      ->required();
  pipe_seed.attach(pipe_cmd);
  pipe_sg.attach(pipe_cmd);
  pipe_cmd->add_option("--out", pipe_opt.out, "Output directory")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));  // CLI11 consumes a reversed vector
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsageError;
  }

  // ---- dispatch -----------------------------------------------------------
  if (svd_cmd->parsed()) {
    prov.add_input("input", svd_opt.input);
    const SpectraMatrix a = read_spectra_csv(svd_opt.input);
    SvdFactors f = svd(a);
    if (svd_opt.k > 0) f = truncate(f, svd_opt.k);
    std::vector<std::string> comp_ids;
    for (Index i = 0; i < f.rank(); ++i) {
      comp_ids.push_back("pc" + std::to_string(i + 1));
    }
    if (!svd_opt.out_u.empty()) {
      Table t;
      t.columns = comp_ids;
      t.row_ids = a.sample_ids;
      t.values = f.U;
      write_table_csv(svd_opt.out_u, t, prov);
    }
    if (!svd_opt.out_s.empty()) {
      write_table_csv(svd_opt.out_s, vector_table(f.S, comp_ids, "singular_value"),
                      prov);
    }
    if (!svd_opt.out_v.empty()) {
      SpectraMatrix loadings;
      loadings.axis = a.axis;
      loadings.values = f.V.transpose();
      loadings.sample_ids = comp_ids;
      write_spectra_csv(svd_opt.out_v, loadings, prov);
    }
    std::cout << "rank " << f.rank() << ", s1 " << format_double(f.S(0))
              << '\n';
    return kOk;
  }

  if (scree_cmd->parsed()) {
    prov.add_input("input", scree_opt.input);
    const SpectraMatrix a = read_spectra_csv(scree_opt.input);
    const auto pairs = scree(svd(a));
    if (scree_opt.out.empty()) {
      std::cout << "index,singular_value\n";
      for (const auto& [i, s] : pairs) {
        std::cout << i << ',' << format_double(s) << '\n';
      }
    } else {
      Table t;
      t.columns = {"singular_value"};
      t.values.resize(static_cast<Index>(pairs.size()), 1);
      for (std::size_t i = 0; i < pairs.size(); ++i) {
        t.row_ids.push_back(std::to_string(pairs[i].first));
        t.values(static_cast<Index>(i), 0) = pairs[i].second;
      }
      write_table_csv(scree_opt.out, t, prov);
    }
    return kOk;
  }

  if (btem_cmd->parsed()) {
    prov.has_seed = true;
    prov.seed = btem_seed.value;
    prov.add_input("input", btem_opt.input);
    const SpectraMatrix a = read_spectra_csv(btem_opt.input);

    BtemConfig cfg;
    cfg.k = btem_opt.k > 0 ? btem_opt.k
                           : std::min(a.n_samples(), a.n_wavelengths());
    if (!btem_opt.band.empty()) cfg.band = parse_band(btem_opt.band);
    cfg.deriv_order = btem_opt.deriv_order;
    if (btem_opt.norm == "sum") {
      cfg.norm_mode = NormMode::sum;
    } else if (btem_opt.norm != "max") {
      throw DataError("--norm must be max or sum");
    }
    cfg.nonneg_weight = btem_opt.gamma;
    if (btem_opt.sg_deriv) {
      cfg.deriv_kind = DerivKind::savitsky_golay;
      cfg.sg = btem_sg.spec();
    }
    cfg.schedule = btem_anneal.schedule;
    cfg.seed = btem_seed.value;

    const BtemResult result = btem_recover(a, cfg);
    write_spectrum_csv(btem_opt.out, result.a_hat, a.axis, prov);
    if (!btem_opt.trace.empty()) {
      write_trace_csv(btem_opt.trace, result.objective_trace, prov);
    }
    std::cout << "objective " << format_double(result.objective)
              << ", accepted " << format_double(result.accepted_ratio) << '\n';
    return kOk;
  }

  if (tpls_cmd->parsed()) {
    prov.add_input("input", tpls_opt.input);
    prov.add_input("target", tpls_opt.target);
    const SpectraMatrix a = read_spectra_csv(tpls_opt.input);
    const auto [target, target_axis] = read_spectrum_csv(tpls_opt.target);

    Index projections = tpls_opt.projections;
    TplsOptions options;
    options.center = tpls_opt.center;
    if (projections <= 0 && tpls_opt.select_threshold <= 0.0) {
      throw DataError("tpls: give --projections or --select-threshold");
    }
    TplsModel model;
    if (tpls_opt.select_threshold > 0.0) {
      const Index full = std::min(a.n_samples(), a.n_wavelengths());
      model = tpls_fit(a, target, full, options);
      const Index chosen =
          select_projections(model, tpls_opt.select_threshold, SsqTrace::x);
      model = tpls_fit(a, target, chosen, options);
    } else {
      model = tpls_fit(a, target, projections, options);
    }

    Table t;
    t.columns = {"m"};
    t.row_ids = a.sample_ids;
    t.values = model.m;
    if (!tpls_opt.scale.empty()) {
      const auto [lo, hi] = parse_range(tpls_opt.scale);
      t.columns.push_back("scaled");
      t.values.conservativeResize(Eigen::NoChange, 2);
      t.values.col(1) = tpls_predict(model, lo, hi);
    }
    write_table_csv(tpls_opt.out, t, prov);

    if (!tpls_opt.ssq.empty()) {
      Table s;
      s.columns = {"ssq_x", "ssq_y"};
      s.values.resize(model.L, 2);
      for (Index l = 0; l < model.L; ++l) {
        s.row_ids.push_back(std::to_string(l + 1));
        s.values(l, 0) = model.ssq_x(l);
        s.values(l, 1) = model.ssq_y(l);
      }
      write_table_csv(tpls_opt.ssq, s, prov);
    }
    if (!model.warning.empty()) {
      std::cerr << "warning: " << model.warning << '\n';
    }
    std::cout << "projections " << model.L << ", ssq_x "
              << format_double(model.ssq_x(model.L - 1)) << ", ssq_y "
              << format_double(model.ssq_y(model.L - 1)) << '\n';
    return kOk;
  }

  if (cls_cmd->parsed()) {
    prov.add_input("input", cls_opt.input);
    prov.add_input("target", cls_opt.target);
    const SpectraMatrix a = read_spectra_csv(cls_opt.input);
    const auto [target, target_axis] = read_spectrum_csv(cls_opt.target);
    const Vector c = cls_quantify(a, target);
    Table t = vector_table(c, a.sample_ids, "c");
    if (!cls_opt.scale.empty()) {
      const auto [lo, hi] = parse_range(cls_opt.scale);
      t.columns.push_back("scaled");
      t.values.conservativeResize(Eigen::NoChange, 2);
      t.values.col(1) = range_scale(c, lo, hi);
    }
    write_table_csv(cls_opt.out, t, prov);
    return kOk;
  }

  if (mcr_cmd->parsed()) {
    prov.has_seed = true;
    prov.seed = mcr_seed.value;
    prov.add_input("input", mcr_opt.input);
    const SpectraMatrix a = read_spectra_csv(mcr_opt.input);

    McrConfig cfg;
    cfg.n_components = mcr_opt.components;
    cfg.constraints = parse_constraints(mcr_opt.constraints);
    cfg.max_iterations = mcr_opt.max_iter;
    cfg.tol = mcr_opt.tol;
    cfg.simplisma_alpha = mcr_opt.alpha;
    cfg.seed = mcr_seed.value;
    if (mcr_opt.init == "simplisma") {
      cfg.init = McrInit::simplisma;
    } else if (mcr_opt.init == "random") {
      cfg.init = McrInit::random;
    } else if (mcr_opt.init == "provided") {
      cfg.init = McrInit::provided;
      if (mcr_opt.s0.empty()) {
        throw DataError("mcr: --init provided needs --s0");
      }
      prov.add_input("s0", mcr_opt.s0);
      cfg.s0 = read_spectra_csv(mcr_opt.s0).values;
    } else {
      throw DataError("mcr: unknown init '" + mcr_opt.init + "'");
    }

    const McrResult result = mcr_als(a, cfg);

    std::vector<std::string> comp_ids;
    for (int i = 0; i < mcr_opt.components; ++i) {
      comp_ids.push_back("comp" + std::to_string(i + 1));
    }
    Table ct;
    ct.columns = comp_ids;
    ct.row_ids = a.sample_ids;
    ct.values = result.C;
    write_table_csv(mcr_opt.out_c, ct, prov);

    SpectraMatrix st;
    st.axis = a.axis;
    st.values = result.S;
    st.sample_ids = comp_ids;
    write_spectra_csv(mcr_opt.out_s, st, prov);

    std::cout << "iterations " << result.iterations << ", lof "
              << format_double(result.lof_trace.empty()
                                   ? 100.0
                                   : result.lof_trace.back())
              << ", converged " << (result.converged ? "yes" : "no") << '\n';
    if (result.rank_collapse) {
      std::cerr << "warning: " << result.diagnostic << '\n';
    }
    return kOk;
  }

  if (simp_cmd->parsed()) {
    prov.add_input("input", simp_opt.input);
    const SpectraMatrix a = read_spectra_csv(simp_opt.input);
    const Matrix s0 = simplisma(a, simp_opt.components, simp_opt.alpha);
    SpectraMatrix out;
    out.axis = a.axis;
    out.values = s0;
    for (int i = 0; i < simp_opt.components; ++i) {
      out.sample_ids.push_back("comp" + std::to_string(i + 1));
    }
    write_spectra_csv(simp_opt.out, out, prov);
    return kOk;
  }

  if (synth_cmd->parsed()) {
    prov.has_seed = true;
    prov.seed = synth_seed.value;
    fs::create_directories(synth_opt.out);
    const auto path = [&](const std::string& name) {
      return (fs::path(synth_opt.out) / name).string();
    };

    if (synth_opt.scenario == "triliquid" || synth_opt.scenario == "dilution") {
      SynthResult data;
      std::vector<std::string> names;
      if (synth_opt.scenario == "triliquid") {
        TriliquidScenario sc = make_triliquid(synth_seed.value);
        data = std::move(sc.data);
        for (const auto& c : sc.components) names.push_back(c.name);
      } else {
        DilutionScenario sc = make_dilution(synth_seed.value);
        data = std::move(sc.data);
        names = {sc.base.name, sc.contaminant.name};
      }
      write_spectra_csv(path("data.csv"), data.data, prov);
      Table truth;
      truth.columns = names;
      truth.row_ids = data.data.sample_ids;
      truth.values = data.truth;
      write_table_csv(path("truth.csv"), truth, prov);
      SpectraMatrix pure;
      pure.axis = data.data.axis;
      pure.values = data.pure_spectra;
      pure.sample_ids = names;
      write_spectra_csv(path("pure_spectra.csv"), pure, prov);
    } else if (synth_opt.scenario == "cube") {
      CubeScenario sc = make_cube(synth_seed.value);
      write_cube_csv(path("cube.csv"), sc.data.cube, prov);
      write_matrix_csv(path("truth.csv"), sc.data.truth_map, prov);
      write_spectrum_csv(path("target_spectrum.csv"), sc.data.target_spectrum,
                         sc.axis, prov);
    } else {
      throw DataError("unknown scenario '" + synth_opt.scenario + "'");
    }
    return kOk;
  }

  if (rmse_cmd->parsed()) {
    prov.add_input("pred", rmse_opt.pred);
    prov.add_input("truth", rmse_opt.truth);
    const Table pred = read_table_csv(rmse_opt.pred);
    const Table truth = read_table_csv(rmse_opt.truth);
    if (rmse_opt.pred_col >= pred.values.cols() ||
        rmse_opt.truth_col >= truth.values.cols()) {
      throw DataError("eval rmse: column index out of range");
    }
    const auto [lo, hi] = parse_range(rmse_opt.scale);
    const double rmse = rmse_percent(pred.values.col(rmse_opt.pred_col),
                                     truth.values.col(rmse_opt.truth_col), lo,
                                     hi);
    json report;
    report["provenance"] = provenance_json(prov);
    report["rmse_percent"] = rmse;
    if (!rmse_opt.out.empty()) write_json(rmse_opt.out, report);
    std::cout << "rmse_percent " << format_double(rmse) << '\n';
    return kOk;
  }

  if (proc_cmd->parsed()) {
    prov.add_input("a", proc_opt.a);
    prov.add_input("b", proc_opt.b);
    const auto [a, a_axis] = read_spectrum_csv(proc_opt.a);
    const auto [b, b_axis] = read_spectrum_csv(proc_opt.b);
    const double d = procrustes_distance(
        a, b,
        proc_opt.max_rescaled ? ProcrustesScaling::max_rescaled_input
                              : ProcrustesScaling::unit_norm);
    json report;
    report["provenance"] = provenance_json(prov);
    report["procrustes_distance"] = d;
    if (!proc_opt.out.empty()) write_json(proc_opt.out, report);
    std::cout << "procrustes_distance " << format_double(d) << '\n';
    return kOk;
  }

  if (nncv_cmd->parsed()) {
    Matrix scores;
    if (!nncv_opt.scores.empty()) {
      prov.add_input("scores", nncv_opt.scores);
      scores = read_matrix_csv(nncv_opt.scores);
    } else if (!nncv_opt.input.empty()) {
      prov.add_input("input", nncv_opt.input);
      const SpectraMatrix a = read_spectra_csv(nncv_opt.input);
      std::optional<Band> band;
      if (!nncv_opt.band.empty()) band = parse_band(nncv_opt.band);
      scores = pca_scores(a, nncv_opt.k, band);
    } else {
      throw DataError("eval nncv: give --scores or --input");
    }
    const double cv = nn_distance_cv(scores);
    json report;
    report["provenance"] = provenance_json(prov);
    report["nn_distance_cv_percent"] = cv;
    if (!nncv_opt.out.empty()) write_json(nncv_opt.out, report);
    std::cout << "nn_distance_cv_percent " << format_double(cv) << '\n';
    return kOk;
  }

  if (jack_cmd->parsed()) {
    prov.has_seed = true;
    prov.seed = jack_seed.value;
    prov.add_input("cube", jack_opt.cube);
    const HyperCube cube = read_cube_csv(jack_opt.cube);

    const auto comma = jack_opt.stack.find(',');
    if (comma == std::string::npos) {
      throw DataError("--stack must be x,y");
    }
    const int stack_x = std::stoi(jack_opt.stack.substr(0, comma));
    const int stack_y = std::stoi(jack_opt.stack.substr(comma + 1));

    std::vector<int> near;
    for (int y = 0; y < cube.height; ++y) {
      for (int x = 0; x < cube.width; ++x) {
        const double dx = x - stack_x;
        const double dy = y - stack_y;
        if (std::sqrt(dx * dx + dy * dy) <= jack_opt.radius) {
          near.push_back(static_cast<int>(cube.pixel_index(x, y)));
        }
      }
    }
    if (near.size() < 3) {
      throw DataError("eval jackknife: fewer than 3 pixels near the stack");
    }

    fs::create_directories(jack_opt.out);
    const auto out_path = [&](const std::string& name) {
      return (fs::path(jack_opt.out) / name).string();
    };

    SgFilterSpec sg = jack_sg.spec();
    const auto trial = [&](const std::vector<int>& subset) {
      SpectraMatrix pixels;
      pixels.axis = cube.spectra.axis;
      pixels.values.resize(static_cast<Index>(subset.size()),
                           cube.spectra.n_wavelengths());
      int left_out = static_cast<int>(near.size() * (near.size() - 1)) / 2;
      for (std::size_t i = 0; i < subset.size(); ++i) {
        pixels.values.row(static_cast<Index>(i)) =
            cube.spectra.values.row(near[static_cast<std::size_t>(subset[i])]);
        left_out -= subset[i];
      }
      BtemConfig cfg;
      cfg.k = jack_opt.k;
      cfg.seed = jack_seed.value + 1000 * (1 + static_cast<std::uint64_t>(left_out));
      const BtemResult recovered = btem_recover(pixels, cfg);
      const Vector estimate =
          max_rescale(savitsky_golay(recovered.a_hat, cube.spectra.axis, sg));
      const TplsModel model =
          tpls_fit(cube.spectra, estimate, jack_opt.projections);
      Matrix map(cube.height, cube.width);
      for (int y = 0; y < cube.height; ++y) {
        for (int x = 0; x < cube.width; ++x) {
          map(y, x) = model.m(cube.pixel_index(x, y));
        }
      }
      return map;
    };

    const JackknifeMaps maps =
        jackknife_maps(trial, static_cast<int>(near.size()));
    render_heatmap(maps.mean, out_path("jackknife_mean.pgm"), prov);
    render_heatmap(maps.sd, out_path("jackknife_sd.pgm"), prov);

    const auto [mx, my] = map_argmax(maps.mean);
    json report;
    report["provenance"] = provenance_json(prov);
    report["trials"] = near.size();
    report["mean_argmax"] = {mx, my};
    write_json(out_path("report.json"), report);
    std::cout << "mean_argmax " << mx << ',' << my << '\n';
    return kOk;
  }

  if (pipe_cmd->parsed()) {
    prov.has_seed = true;
    prov.seed = pipe_seed.value;
    fs::create_directories(pipe_opt.out);
    const auto path = [&](const std::string& name) {
      return (fs::path(pipe_opt.out) / name).string();
    };

    PipelineOptions options;
    options.smoothing = SgFilterSpec{pipe_sg.window, pipe_sg.order, 0};

    json report;
    report["provenance"] = provenance_json(prov);
    report["scenario"] = pipe_opt.scenario;

    if (pipe_opt.scenario == "triliquid") {
      const TriliquidReport r = run_triliquid(pipe_seed.value, options);
      write_spectra_csv(path("data.csv"), r.scenario.data.data, prov);
      json comps = json::array();
      for (std::size_t i = 0; i < r.components.size(); ++i) {
        const auto& c = r.components[i];
        const std::string& name = r.scenario.components[i].name;
        write_spectrum_csv(path("ahat_" + name + ".csv"), r.estimates[i],
                           r.scenario.axis, prov);
        write_trace_csv(path("trace_" + name + ".csv"), r.traces[i], prov);
        comps.push_back({{"name", r.scenario.components[i].name},
                         {"btem_cosine", c.btem_cosine},
                         {"procrustes", c.procrustes},
                         {"tpls_rmse_percent", c.tpls_rmse},
                         {"cls_rmse_percent", c.cls_rmse},
                         {"mcr_rmse_percent", c.mcr_rmse}});
      }
      report["components"] = comps;
      report["mcr_converged"] = r.mcr.converged;
    } else if (pipe_opt.scenario == "dilution") {
      const DilutionReport r = run_dilution(pipe_seed.value, options);
      write_spectra_csv(path("data.csv"), r.scenario.data.data, prov);
      write_spectrum_csv(path("ahat_contaminant.csv"), r.estimate,
                         r.scenario.axis, prov);
      write_trace_csv(path("trace_contaminant.csv"), r.trace, prov);
      report["btem_cosine"] = r.btem_cosine;
      report["btem_cosine_raw"] = r.btem_cosine_raw;
      report["tpls_r2"] = r.tpls_r2;
      report["tpls_rmse_percent"] = r.tpls_rmse;
      report["mcr1_max_cosine"] = r.mcr1_max_cosine;
      report["mcr2_max_cosine"] = r.mcr2_max_cosine;
    } else if (pipe_opt.scenario == "cube") {
      const CubeReport r = run_cube(pipe_seed.value, options);
      write_cube_csv(path("cube.csv"), r.scenario.data.cube, prov);
      write_spectrum_csv(path("ahat_target.csv"), r.estimate, r.scenario.axis,
                         prov);
      write_trace_csv(path("trace_target.csv"), r.trace, prov);
      render_heatmap(r.tpls_map, path("tpls_map.pgm"), prov);
      render_heatmap(r.jackknife.mean, path("jackknife_mean.pgm"), prov);
      render_heatmap(r.jackknife.sd, path("jackknife_sd.pgm"), prov);
      report["btem_cosine"] = r.btem_cosine;
      report["map_argmax"] = {r.map_argmax.first, r.map_argmax.second};
      report["stack"] = {r.scenario.plume.stack_x, r.scenario.plume.stack_y};
      json trials = json::array();
      for (const auto& [x, y] : r.trial_argmax) trials.push_back({x, y});
      report["trial_argmax"] = trials;
      report["sd_near_mean"] = r.sd_near_mean;
      report["sd_ring_mean"] = r.sd_ring_mean;
      report["ssq_x"] = r.ssq_x_at_L;
      report["ssq_y"] = r.ssq_y_at_L;
    } else {
      throw DataError("unknown scenario '" + pipe_opt.scenario + "'");
    }
    write_json(path("report.json"), report);
    std::cout << "report " << path("report.json") << '\n';
    return kOk;
  }

  return kUsageError;  // unreachable: require_subcommand(1)
}

}  // namespace

int run(const std::vector<std::string>& args) {
  try {
    return run_impl(args);
  } catch (const DataError& e) {
    std::cerr << "error[data]: " << e.what() << '\n';
    return kDataError;
  } catch (const NumericalError& e) {
    std::cerr << "error[numerical]: " << e.what() << '\n';
    return kNumericalError;
  } catch (const std::exception& e) {
    std::cerr << "error[internal]: " << e.what() << '\n';
    return kNumericalError;
  }
}

int run(int argc, const char* const* argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args);
}

}  // namespace unmix::cli
