#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "unmix/types.hpp"

namespace unmix {

// Thin SVD of the raw absorbance matrix (no centering). Deterministic: the
// sign of each (U_i, V_i) pair is fixed by making the largest-magnitude
// element of the V column positive.
SvdFactors svd(const Matrix& a);
SvdFactors svd(const SpectraMatrix& a);

// First k columns/values. 1 <= k <= rank.
SvdFactors truncate(const SvdFactors& f, Index k);

// (index, singular value) pairs, 1-based, for scree inspection. Component
// count selection stays with the analyst; no automatic cutoff.
std::vector<std::pair<int, double>> scree(const SvdFactors& f);

// Scores of the mean-centered data restricted to `band` (full axis when
// absent): first k columns of U*diag(S) of the centered slice.
Matrix pca_scores(const SpectraMatrix& a, Index k,
                  const std::optional<Band>& band = std::nullopt);

// Moore-Penrose pseudoinverse via SVD with the usual max(m,n)*eps*s_max
// cutoff. Shared by the ALS and evaluation code.
Matrix pinv(const Matrix& a);

}  // namespace unmix
