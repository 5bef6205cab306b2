#include "unmix/btem.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "unmix/decompose.hpp"
#include "unmix/rng.hpp"

namespace unmix {

namespace {

constexpr double kBandFloorObjective = 1e9;   // combination dead inside the band
constexpr double kBandDominanceWeight = 1e3;  // per unit of out-of-band overshoot

Vector combine_loadings(const Vector& t, const SvdFactors& f) {
  return f.V * (f.S.array() * t.array()).matrix();
}

}  // namespace

double shannon_entropy(const Vector& p) {
  if (p.size() == 0) {
    throw DataError("shannon_entropy: empty vector");
  }
  double h = 0.0;
  bool any_positive = false;
  for (Index i = 0; i < p.size(); ++i) {
    const double v = p(i);
    if (v < 0.0) {
      throw DataError("shannon_entropy: negative entry");
    }
    if (v > 0.0) {
      any_positive = true;
      h -= v * std::log2(v);
    }
  }
  if (!any_positive) {
    throw DataError("shannon_entropy: all entries zero");
  }
  return h;
}

void AnnealSchedule::validate() const {
  if (t_initial <= 0.0 || t_final <= 0.0) {
    throw DataError("anneal: temperatures must be positive");
  }
  if (t_final >= t_initial) {
    throw DataError("anneal: t_final must be below t_initial");
  }
  if (cooling <= 0.0 || cooling >= 1.0) {
    throw DataError("anneal: cooling factor must lie in (0, 1)");
  }
  if (steps_per_temperature < 0 || restarts < 1 || step_scale <= 0.0) {
    throw DataError("anneal: invalid schedule");
  }
}

double btem_objective(const Vector& t, const SvdFactors& truncated,
                      const WavelengthAxis& axis, const BtemConfig& config) {
  if (t.size() != truncated.rank()) {
    throw DataError("btem_objective: weight length does not match the truncation");
  }
  Vector a_hat = combine_loadings(t, truncated);

  double band_penalty = 0.0;
  if (config.band) {
    const auto [first, last] = axis.band_indices(*config.band);
    const double max_in = a_hat.segment(first, last - first + 1).maxCoeff();
    if (max_in <= 1e-12) {
      // Nothing above zero inside the target band: reject outright.
      return kBandFloorObjective;
    }
    a_hat /= max_in;  // in-band maximum pinned to one
    const double max_all = a_hat.maxCoeff();
    if (max_all > 1.0) {
      band_penalty = kBandDominanceWeight * (max_all - 1.0);
    }
  }

  Vector d;
  if (config.deriv_kind == DerivKind::savitsky_golay) {
    SgFilterSpec sg = config.sg;
    sg.deriv_order = config.deriv_order;
    d = savitsky_golay(a_hat, axis, sg).cwiseAbs();
  } else {
    d = derivative(a_hat, axis, config.deriv_order).cwiseAbs();
  }

  double h = 0.0;
  const double dmax = d.maxCoeff();
  if (dmax > 0.0) {
    if (config.norm_mode == NormMode::max) {
      h = shannon_entropy(d / dmax);
    } else {
      h = shannon_entropy(d / d.sum());
    }
  }
  // A flat spectrum (dmax == 0) is minimal in differential information: h = 0.

  double nonneg = 0.0;
  for (Index i = 0; i < a_hat.size(); ++i) {
    const double v = std::min(0.0, a_hat(i));
    nonneg += v * v;
  }
  return h + config.nonneg_weight * nonneg + band_penalty;
}

AnnealResult anneal(const std::function<double(const Vector&)>& objective,
                    const Vector& x0, const AnnealSchedule& schedule,
                    std::uint64_t seed) {
  schedule.validate();
  if (x0.size() < 1) {
    throw DataError("anneal: empty starting point");
  }

  AnnealResult result;
  result.best = x0;
  result.best_objective = objective(x0);
  if (!std::isfinite(result.best_objective)) {
    result.best_objective = std::numeric_limits<double>::infinity();
  }
  std::int64_t iteration = 0;
  result.trace.emplace_back(iteration, result.best_objective);

  std::int64_t proposed = 0;
  std::int64_t accepted = 0;

  for (int restart = 0; restart < schedule.restarts; ++restart) {
    Rng rng(seed + static_cast<std::uint64_t>(restart));
    Vector x = x0;
    double fx = objective(x);
    if (!std::isfinite(fx)) fx = std::numeric_limits<double>::infinity();

    for (double temp = schedule.t_initial; temp > schedule.t_final;
         temp *= schedule.cooling) {
      const double sd = schedule.step_scale * temp / schedule.t_initial;
      for (int step = 0; step < schedule.steps_per_temperature; ++step) {
        ++iteration;
        ++proposed;
        Vector cand = x;
        for (Index i = 0; i < cand.size(); ++i) cand(i) += sd * rng.gaussian();
        const double fc = objective(cand);
        if (!std::isfinite(fc)) continue;  // reject, keep annealing
        if (fc <= fx || rng.uniform() < std::exp(-(fc - fx) / temp)) {
          x = std::move(cand);
          fx = fc;
          ++accepted;
          if (fx < result.best_objective) {
            result.best_objective = fx;
            result.best = x;
            result.trace.emplace_back(iteration, fx);
          }
        }
      }
    }
  }
  result.accepted_ratio =
      proposed > 0 ? static_cast<double>(accepted) / static_cast<double>(proposed)
                   : 0.0;
  return result;
}

BtemResult btem_recover(const SpectraMatrix& a, const BtemConfig& config) {
  a.validate();
  if (config.k < 1 ||
      config.k > std::min(a.n_samples(), a.n_wavelengths())) {
    throw DataError("btem: k outside [1, min(n, p)]");
  }
  if (config.band) {
    a.axis.band_indices(*config.band);  // throws when empty
  }

  const SvdFactors factors = truncate(svd(a), config.k);
  const auto objective = [&](const Vector& t) {
    return btem_objective(t, factors, a.axis, config);
  };

  Vector x0 = Vector::Zero(config.k);
  x0(0) = 1.0;  // dominant loading is the best single-vector start

  AnnealResult best = anneal(objective, x0, config.schedule, config.seed);

  BtemResult result;
  result.t = best.best;
  result.objective_trace = std::move(best.trace);
  result.accepted_ratio = best.accepted_ratio;
  result.objective = best.best_objective;

  Vector a_hat = combine_loadings(result.t, factors);
  const double peak = a_hat.maxCoeff();
  if (peak > 0.0) {
    result.t /= peak;
    a_hat = combine_loadings(result.t, factors);
  }
  result.a_hat = std::move(a_hat);
  return result;
}

}  // namespace unmix
