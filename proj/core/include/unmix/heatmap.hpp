#pragma once

#include <string>

#include "unmix/provenance.hpp"
#include "unmix/types.hpp"

namespace unmix {

// Grayscale portable graymap (P2, maxval 255) with linear range scaling of
// the map values; a constant map degenerates to all zeros. Also writes the
// raw values as CSV next to the image (same stem, .csv extension).
void render_heatmap(const Matrix& map, const std::string& pgm_path,
                    const Provenance& prov);

}  // namespace unmix
