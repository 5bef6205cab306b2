#include "unmix/synth.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "unmix/rng.hpp"

namespace unmix {

Vector gaussian_spectrum(const ComponentSpec& spec, const WavelengthAxis& axis) {
  axis.validate();
  Vector out = Vector::Zero(axis.size());
  for (const Peak& peak : spec.peaks) {
    if (!(peak.width > 0.0) || !(peak.height > 0.0)) {
      throw DataError("gaussian_spectrum: peak width and height must be positive");
    }
    for (Index i = 0; i < axis.size(); ++i) {
      const double d = (axis.values(i) - peak.center) / peak.width;
      out(i) += peak.height * std::exp(-0.5 * d * d);
    }
  }
  return out;
}

Matrix simplex_design(int levels, int n_components, bool exclude_pure) {
  if (levels < 2 || n_components < 1) {
    throw DataError("simplex_design: need levels >= 2 and at least one component");
  }
  const int total = levels - 1;  // grid units summing to this
  std::vector<std::vector<int>> rows;
  std::vector<int> current(n_components, 0);
  const std::function<void(int, int)> enumerate = [&](int pos, int remaining) {
    if (pos == n_components - 1) {
      current[pos] = remaining;
      rows.push_back(current);
      return;
    }
    for (int v = 0; v <= remaining; ++v) {
      current[pos] = v;
      enumerate(pos + 1, remaining - v);
    }
  };
  enumerate(0, total);

  if (exclude_pure) {
    std::erase_if(rows, [&](const std::vector<int>& r) {
      return std::any_of(r.begin(), r.end(),
                         [&](int v) { return v == total; });
    });
  }

  Matrix design(static_cast<Index>(rows.size()), n_components);
  for (Index i = 0; i < design.rows(); ++i) {
    for (int j = 0; j < n_components; ++j) {
      design(i, j) = static_cast<double>(rows[i][j]) / total;
    }
  }
  return design;
}

SynthResult synthesize(const std::vector<ComponentSpec>& components,
                       const MixtureDesign& design, const WavelengthAxis& axis) {
  axis.validate();
  if (components.empty()) {
    throw DataError("synthesize: no components");
  }
  if (design.concentrations.cols() != static_cast<Index>(components.size())) {
    throw DataError("synthesize: design width does not match the component count");
  }
  if (design.replicates < 1) {
    throw DataError("synthesize: replicates must be >= 1");
  }

  const Index k = static_cast<Index>(components.size());
  Matrix pure(k, axis.size());
  for (Index i = 0; i < k; ++i) {
    pure.row(i) = gaussian_spectrum(components[i], axis).transpose();
  }

  const Index designs = design.concentrations.rows();
  const Index n = designs * design.replicates;
  Matrix truth(n, k);
  for (int r = 0; r < design.replicates; ++r) {
    truth.middleRows(r * designs, designs) = design.concentrations;
  }

  Matrix a = truth * pure;
  Rng rng(design.seed);
  for (Index i = 0; i < n; ++i) {
    if (design.scatter) {
      const double gain = 1.0 + design.scatter->multiplicative_sd * rng.gaussian();
      const double offset = design.scatter->additive_sd * rng.gaussian();
      a.row(i) = a.row(i) * gain + Eigen::RowVectorXd::Constant(a.cols(), offset);
    }
    if (design.noise_sd > 0.0) {
      for (Index j = 0; j < a.cols(); ++j) {
        a(i, j) += design.noise_sd * rng.gaussian();
      }
    }
  }

  SynthResult result;
  result.data.values = std::move(a);
  result.data.axis = axis;
  result.data.sample_ids.reserve(n);
  for (int r = 0; r < design.replicates; ++r) {
    for (Index d = 0; d < designs; ++d) {
      result.data.sample_ids.push_back("s" + std::to_string(d) + "_r" +
                                       std::to_string(r));
    }
  }
  result.truth = std::move(truth);
  result.pure_spectra = std::move(pure);
  result.data.validate();
  return result;
}

Matrix gaussian_plume(int width, int height, const PlumeSpec& plume) {
  if (width < 1 || height < 1) {
    throw DataError("gaussian_plume: empty image");
  }
  if (!(plume.sigma > 0.0) || plume.amplitude < 0.0) {
    throw DataError("gaussian_plume: invalid plume shape");
  }
  Matrix field(height, width);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      const double dx = x - plume.stack_x;
      const double dy = y - plume.stack_y;
      field(y, x) =
          plume.amplitude * std::exp(-0.5 * (dx * dx + dy * dy) /
                                     (plume.sigma * plume.sigma));
    }
  }
  return field;
}

double BackgroundField::weight_at(std::size_t i, int x, int y, int width,
                                  int height) const {
  const auto& w = weights[i];
  const double fx = width > 1 ? static_cast<double>(x) / (width - 1) : 0.0;
  const double fy = height > 1 ? static_cast<double>(y) / (height - 1) : 0.0;
  return std::max(0.0, w[0] + w[1] * fx + w[2] * fy);
}

CubeResult synth_hypercube(int width, int height, const Matrix& plume,
                           const BackgroundField& background,
                           const ComponentSpec& target, double noise_sd,
                           std::uint64_t seed, const WavelengthAxis& axis) {
  axis.validate();
  if (plume.rows() != height || plume.cols() != width) {
    throw DataError("synth_hypercube: plume field shape does not match the image");
  }
  if (plume.minCoeff() < 0.0) {
    throw DataError("synth_hypercube: plume intensities must be non-negative");
  }
  if (background.components.size() != background.weights.size()) {
    throw DataError("synth_hypercube: background weights do not match components");
  }

  const Index p = axis.size();
  Matrix bg_spectra(static_cast<Index>(background.components.size()), p);
  for (Index i = 0; i < bg_spectra.rows(); ++i) {
    bg_spectra.row(i) =
        gaussian_spectrum(background.components[i], axis).transpose();
  }
  const Vector target_spectrum = gaussian_spectrum(target, axis);

  CubeResult result;
  result.cube.width = width;
  result.cube.height = height;
  result.cube.spectra.axis = axis;
  result.cube.spectra.values.resize(static_cast<Index>(width) * height, p);
  result.truth_map = plume;
  result.target_spectrum = target_spectrum;

  Rng rng(seed);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      const Index row = result.cube.pixel_index(x, y);
      Vector spec = plume(y, x) * target_spectrum;
      for (std::size_t i = 0; i < background.components.size(); ++i) {
        spec += background.weight_at(i, x, y, width, height) *
                bg_spectra.row(static_cast<Index>(i)).transpose();
      }
      if (noise_sd > 0.0) {
        for (Index j = 0; j < p; ++j) spec(j) += noise_sd * rng.gaussian();
      }
      result.cube.spectra.values.row(row) = spec.transpose();
      result.cube.spectra.sample_ids.push_back(
          "px" + std::to_string(x) + "_" + std::to_string(y));
    }
  }
  result.cube.validate();
  return result;
}

}  // namespace unmix
