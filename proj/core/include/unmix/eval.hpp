#pragma once

#include <functional>
#include <vector>

#include "unmix/types.hpp"

namespace unmix {

// Range-scales pred onto [lo, hi] and returns the RMSE against truth in
// those units. Invariant to positive affine transforms of pred.
double rmse_percent(const Vector& pred, const Vector& truth, double lo,
                    double hi);

enum class ProcrustesScaling {
  unit_norm,           // center, scale to unit norm, sign-align
  max_rescaled_input,  // divide inputs by their maxima, center, sign-align
};

// Shape dissimilarity after centering, scaling, and the 1-D orthogonal
// (sign) alignment. Symmetric; invariant to offset and positive scaling of
// either argument.
double procrustes_distance(const Vector& a, const Vector& b,
                           ProcrustesScaling scaling = ProcrustesScaling::unit_norm);

// Squared Pearson correlation.
double r_squared(const Vector& actual, const Vector& pred);

struct JackknifeMaps {
  Matrix mean;
  Matrix sd;  // jackknife estimate: sqrt((n-1)/n * sum (m_i - mean)^2)
};

// Runs `run` on every leave-one-out index subset of 0..n_samples-1. Each
// returned map is range-scaled to [0, 1] before pooling (pass
// scale_maps=false for raw pooling). A failing trial aborts the pooling.
JackknifeMaps jackknife_maps(
    const std::function<Matrix(const std::vector<int>&)>& run, int n_samples,
    bool scale_maps = true);

// Coefficient of variation (percent, sd/mean with sample sd) of the
// Euclidean nearest-neighbor distances between score rows. Duplicate points
// contribute zero distances; all-identical input is rejected.
double nn_distance_cv(const Matrix& scores);

// a.b / (|a||b|); rejects zero vectors.
double cosine_similarity(const Vector& a, const Vector& b);

// Greedy best-first assignment of estimate rows to truth rows by cosine
// similarity; returns truth index per estimate row. Always a bijection.
std::vector<int> match_components(const Matrix& estimates, const Matrix& truth);

}  // namespace unmix
