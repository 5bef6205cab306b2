#pragma once

#include <string>
#include <utility>
#include <vector>

#include "unmix/provenance.hpp"
#include "unmix/types.hpp"

namespace unmix {

// Formats a double with round-trip precision ("%.17g"); the single number
// formatter used for all data files so reruns are byte-identical.
std::string format_double(double v);

// Spectra CSV: first row is the wavelength axis with the unit token in the
// corner cell ("nm" or "cm-1"; anything else reads as nm), first column the
// sample id. '#' lines are comments.
SpectraMatrix read_spectra_csv(const std::string& path);
void write_spectra_csv(const std::string& path, const SpectraMatrix& a,
                       const Provenance& prov);

// HyperCube: spectra CSV plus a JSON sidecar at <path>.json with
// {"width": W, "height": H, "pixel_order": "row-major"}.
HyperCube read_cube_csv(const std::string& path);
void write_cube_csv(const std::string& path, const HyperCube& cube,
                    const Provenance& prov);

// Single spectrum as (wavelength, value) rows; the column header carries the
// unit ("wavelength_nm" / "wavenumber_cm-1").
std::pair<Vector, WavelengthAxis> read_spectrum_csv(const std::string& path);
void write_spectrum_csv(const std::string& path, const Vector& values,
                        const WavelengthAxis& axis, const Provenance& prov);

// Generic labeled table: header row of column names, then one row id plus
// values per line. Used for concentration profiles, traces, and reports.
struct Table {
  std::vector<std::string> columns;   // excludes the id column
  std::vector<std::string> row_ids;
  Matrix values;
};

Table read_table_csv(const std::string& path);
void write_table_csv(const std::string& path, const Table& table,
                     const Provenance& prov);

// Raw numeric grid (no header) for intensity maps.
Matrix read_matrix_csv(const std::string& path);
void write_matrix_csv(const std::string& path, const Matrix& m,
                      const Provenance& prov);

}  // namespace unmix
