#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "unmix/preprocess.hpp"
#include "unmix/types.hpp"

namespace unmix {

// Shannon entropy H = -sum p_i log2(p_i) in bits, with 0*log2(0) == 0.
// Computed on the vector as given; callers normalize beforehand. Entries
// must be non-negative and not all zero.
double shannon_entropy(const Vector& p);

enum class NormMode { max, sum };
enum class DerivKind { finite_difference, savitsky_golay };

struct AnnealSchedule {
  double t_initial = 1.0;
  double t_final = 1e-4;
  double cooling = 0.95;           // geometric factor per temperature level
  int steps_per_temperature = 200;
  double step_scale = 0.5;         // proposal sd at t_initial, shrinks with T
  int restarts = 3;

  void validate() const;
};

struct BtemConfig {
  Index k = 1;                     // retained singular values
  std::optional<Band> band;        // targeted wavelength interval
  int deriv_order = 1;
  NormMode norm_mode = NormMode::max;
  DerivKind deriv_kind = DerivKind::finite_difference;
  SgFilterSpec sg{11, 2, 1};       // used when deriv_kind == savitsky_golay
  double nonneg_weight = 100.0;
  AnnealSchedule schedule;
  std::uint64_t seed = 0;
};

// (global iteration, best objective so far); appended on improvement only,
// so the series is non-increasing by construction.
using ObjectiveTrace = std::vector<std::pair<std::int64_t, double>>;

struct AnnealResult {
  Vector best;
  double best_objective = 0.0;
  ObjectiveTrace trace;
  double accepted_ratio = 0.0;
};

struct BtemResult {
  Vector t;                 // optimized loading weights, length k
  Vector a_hat;             // recovered spectrum, max-rescaled
  ObjectiveTrace objective_trace;
  double accepted_ratio = 0.0;
  double objective = 0.0;   // final best objective value
};

// Entropy-of-derivative objective over the combination a_hat(t) =
// sum_i t_i S_i V_i of truncated SVD loadings:
//
//   O(t) = H(normalized |d a_hat / d lambda|)
//        + nonneg_weight * sum_i min(0, a_hat_i)^2
//        + band anchoring terms (see below)
//
// With band targeting active, a_hat is first rescaled so its maximum inside
// the band equals one, and combinations whose maximum falls outside the band
// are penalized in proportion to the overshoot. The derivative normalization
// is by max (paper default) or by sum; an all-zero derivative scores zero
// entropy (a flat spectrum carries no differential information).
double btem_objective(const Vector& t, const SvdFactors& truncated,
                      const WavelengthAxis& axis, const BtemConfig& config);

// Simulated annealing: Gaussian proposals of sd step_scale*T/t_initial per
// coordinate, Metropolis acceptance exp(-dO/T), geometric cooling. Restarts
// share the starting point and differ by derived seeds (seed + restart
// index); the best point across restarts wins, ties to the lowest restart.
// Fully deterministic given the seed. Non-finite objective values reject the
// candidate and the run continues.
AnnealResult anneal(const std::function<double(const Vector&)>& objective,
                    const Vector& x0, const AnnealSchedule& schedule,
                    std::uint64_t seed);

// Full recovery: svd -> truncate(k) -> anneal over t starting from e1 (the
// dominant loading alone). The returned a_hat is max-rescaled, with t scaled
// by the same factor so a_hat = t*diag(S)*V^T holds exactly.
BtemResult btem_recover(const SpectraMatrix& a, const BtemConfig& config);

}  // namespace unmix
