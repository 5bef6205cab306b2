#include "unmix/heatmap.hpp"

#include <cmath>
#include <fstream>

#include "unmix/io.hpp"

namespace unmix {

void render_heatmap(const Matrix& map, const std::string& pgm_path,
                    const Provenance& prov) {
  if (map.size() == 0 || !map.allFinite()) {
    throw DataError("render_heatmap: map must be non-empty and finite");
  }
  std::ofstream out(pgm_path, std::ios::binary);
  if (!out) {
    throw DataError("cannot write " + pgm_path);
  }

  const double lo = map.minCoeff();
  const double hi = map.maxCoeff();
  const double span = hi - lo;

  out << "P2\n";
  out << provenance_comments(prov);
  out << map.cols() << ' ' << map.rows() << "\n255\n";
  for (Index i = 0; i < map.rows(); ++i) {
    for (Index j = 0; j < map.cols(); ++j) {
      // Constant maps degenerate to black rather than failing.
      const int level =
          span > 0.0
              ? static_cast<int>(std::lround(255.0 * (map(i, j) - lo) / span))
              : 0;
      if (j > 0) out << ' ';
      out << level;
    }
    out << '\n';
  }

  std::string csv_path = pgm_path;
  if (csv_path.size() >= 4 && csv_path.substr(csv_path.size() - 4) == ".pgm") {
    csv_path = csv_path.substr(0, csv_path.size() - 4);
  }
  write_matrix_csv(csv_path + ".csv", map, prov);
}

}  // namespace unmix
