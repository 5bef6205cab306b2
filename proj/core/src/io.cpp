#include "unmix/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace unmix {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

double parse_double(const std::string& cell, const std::string& path) {
  try {
    std::size_t used = 0;
    const double v = std::stod(cell, &used);
    if (used != cell.size()) throw std::invalid_argument(cell);
    return v;
  } catch (const std::exception&) {
    throw DataError(path + ": malformed numeric cell '" + cell + "'");
  }
}

// Data lines of a CSV file, comment ('#') and blank lines dropped.
std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw DataError("cannot open " + path);
  }
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    lines.push_back(line);
  }
  if (lines.empty()) {
    throw DataError(path + ": no data rows");
  }
  return lines;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);  // binary: no CRLF translation
  if (!out) {
    throw DataError("cannot write " + path);
  }
  return out;
}

}  // namespace

SpectraMatrix read_spectra_csv(const std::string& path) {
  const auto lines = read_lines(path);
  const auto header = split_csv_line(lines[0]);
  if (header.size() < 4) {
    throw DataError(path + ": header must hold the unit tag and >= 3 wavelengths");
  }

  SpectraMatrix a;
  a.axis.unit = axis_unit_from_string(header[0]);
  a.axis.values.resize(static_cast<Index>(header.size()) - 1);
  for (std::size_t j = 1; j < header.size(); ++j) {
    a.axis.values(static_cast<Index>(j) - 1) = parse_double(header[j], path);
  }

  const Index p = a.axis.size();
  const Index n = static_cast<Index>(lines.size()) - 1;
  a.values.resize(n, p);
  for (Index i = 0; i < n; ++i) {
    const auto cells = split_csv_line(lines[static_cast<std::size_t>(i) + 1]);
    if (static_cast<Index>(cells.size()) != p + 1) {
      throw DataError(path + ": row " + std::to_string(i + 1) +
                      " has the wrong cell count");
    }
    a.sample_ids.push_back(cells[0]);
    for (Index j = 0; j < p; ++j) {
      a.values(i, j) = parse_double(cells[static_cast<std::size_t>(j) + 1], path);
    }
  }
  a.validate();
  return a;
}

void write_spectra_csv(const std::string& path, const SpectraMatrix& a,
                       const Provenance& prov) {
  a.validate();
  auto out = open_out(path);
  out << provenance_comments(prov);
  out << to_string(a.axis.unit);
  for (Index j = 0; j < a.axis.size(); ++j) {
    out << ',' << format_double(a.axis.values(j));
  }
  out << '\n';
  for (Index i = 0; i < a.n_samples(); ++i) {
    out << (a.sample_ids.empty() ? "s" + std::to_string(i) : a.sample_ids[i]);
    for (Index j = 0; j < a.n_wavelengths(); ++j) {
      out << ',' << format_double(a.values(i, j));
    }
    out << '\n';
  }
}

HyperCube read_cube_csv(const std::string& path) {
  HyperCube cube;
  cube.spectra = read_spectra_csv(path);

  const std::string sidecar = path + ".json";
  std::ifstream in(sidecar);
  if (!in) {
    throw DataError("cannot open cube sidecar " + sidecar);
  }
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& err) {
    throw DataError(sidecar + ": " + err.what());
  }
  if (!j.contains("width") || !j.contains("height")) {
    throw DataError(sidecar + ": missing width/height");
  }
  cube.width = j["width"].get<int>();
  cube.height = j["height"].get<int>();
  if (j.value("pixel_order", "row-major") != "row-major") {
    throw DataError(sidecar + ": only row-major pixel order is supported");
  }
  cube.validate();
  return cube;
}

void write_cube_csv(const std::string& path, const HyperCube& cube,
                    const Provenance& prov) {
  cube.validate();
  write_spectra_csv(path, cube.spectra, prov);
  nlohmann::json j;
  j["width"] = cube.width;
  j["height"] = cube.height;
  j["pixel_order"] = "row-major";
  auto out = open_out(path + ".json");
  out << j.dump(2) << '\n';
}

std::pair<Vector, WavelengthAxis> read_spectrum_csv(const std::string& path) {
  const auto lines = read_lines(path);
  const auto header = split_csv_line(lines[0]);
  if (header.size() != 2) {
    throw DataError(path + ": expected two columns (wavelength, value)");
  }
  WavelengthAxis axis;
  axis.unit = header[0].rfind("wavenumber", 0) == 0 ? AxisUnit::wavenumber
                                                    : AxisUnit::nanometers;
  const Index n = static_cast<Index>(lines.size()) - 1;
  axis.values.resize(n);
  Vector values(n);
  for (Index i = 0; i < n; ++i) {
    const auto cells = split_csv_line(lines[static_cast<std::size_t>(i) + 1]);
    if (cells.size() != 2) {
      throw DataError(path + ": malformed spectrum row");
    }
    axis.values(i) = parse_double(cells[0], path);
    values(i) = parse_double(cells[1], path);
  }
  axis.validate();
  return {values, axis};
}

void write_spectrum_csv(const std::string& path, const Vector& values,
                        const WavelengthAxis& axis, const Provenance& prov) {
  axis.validate();
  if (values.size() != axis.size()) {
    throw DataError("write_spectrum_csv: value/axis length mismatch");
  }
  auto out = open_out(path);
  out << provenance_comments(prov);
  out << (axis.unit == AxisUnit::wavenumber ? "wavenumber_cm-1" : "wavelength_nm")
      << ",value\n";
  for (Index i = 0; i < values.size(); ++i) {
    out << format_double(axis.values(i)) << ',' << format_double(values(i))
        << '\n';
  }
}

Table read_table_csv(const std::string& path) {
  const auto lines = read_lines(path);
  const auto header = split_csv_line(lines[0]);
  if (header.size() < 2) {
    throw DataError(path + ": table needs an id column plus data columns");
  }
  Table t;
  t.columns.assign(header.begin() + 1, header.end());
  const Index cols = static_cast<Index>(t.columns.size());
  const Index rows = static_cast<Index>(lines.size()) - 1;
  t.values.resize(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    const auto cells = split_csv_line(lines[static_cast<std::size_t>(i) + 1]);
    if (static_cast<Index>(cells.size()) != cols + 1) {
      throw DataError(path + ": table row " + std::to_string(i + 1) +
                      " has the wrong cell count");
    }
    t.row_ids.push_back(cells[0]);
    for (Index j = 0; j < cols; ++j) {
      t.values(i, j) = parse_double(cells[static_cast<std::size_t>(j) + 1], path);
    }
  }
  return t;
}

void write_table_csv(const std::string& path, const Table& table,
                     const Provenance& prov) {
  if (table.values.cols() != static_cast<Index>(table.columns.size()) ||
      table.values.rows() != static_cast<Index>(table.row_ids.size())) {
    throw DataError("write_table_csv: inconsistent table");
  }
  auto out = open_out(path);
  out << provenance_comments(prov);
  out << "id";
  for (const auto& c : table.columns) out << ',' << c;
  out << '\n';
  for (Index i = 0; i < table.values.rows(); ++i) {
    out << table.row_ids[static_cast<std::size_t>(i)];
    for (Index j = 0; j < table.values.cols(); ++j) {
      out << ',' << format_double(table.values(i, j));
    }
    out << '\n';
  }
}

Matrix read_matrix_csv(const std::string& path) {
  const auto lines = read_lines(path);
  const auto first = split_csv_line(lines[0]);
  Matrix m(static_cast<Index>(lines.size()), static_cast<Index>(first.size()));
  for (Index i = 0; i < m.rows(); ++i) {
    const auto cells = split_csv_line(lines[static_cast<std::size_t>(i)]);
    if (static_cast<Index>(cells.size()) != m.cols()) {
      throw DataError(path + ": ragged matrix row " + std::to_string(i));
    }
    for (Index j = 0; j < m.cols(); ++j) {
      m(i, j) = parse_double(cells[static_cast<std::size_t>(j)], path);
    }
  }
  return m;
}

void write_matrix_csv(const std::string& path, const Matrix& m,
                      const Provenance& prov) {
  auto out = open_out(path);
  out << provenance_comments(prov);
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) {
      if (j > 0) out << ',';
      out << format_double(m(i, j));
    }
    out << '\n';
  }
}

}  // namespace unmix
