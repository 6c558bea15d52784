#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "foamlb/config.hpp"
#include "foamlb/metrics.hpp"
#include "foamlb/snapshot.hpp"

namespace foamlb {

/// One row per cell: x,y,rho_melt,rho_gas,p,u_x,u_y,bubble_id with 17 significant
/// digits, plus a `<path>.meta` sidecar holding step, time, dx and boundary.
void write_csv(const FieldSnapshot& snap, const std::filesystem::path& path);

/// Reads a CSV written by write_csv. The sidecar is optional; without it dx = 1
/// and step = time = 0. Throws IoError.
FieldSnapshot read_csv(const std::filesystem::path& path);

/// Binary 8-bit PGM (P5).
void write_pgm(const GrayImage& img, const std::filesystem::path& path);
GrayImage read_pgm(const std::filesystem::path& path);

/// Legacy VTK text, STRUCTURED_POINTS with the snapshot fields as point data.
void write_vtk(const FieldSnapshot& snap, const std::filesystem::path& path);

/// Writes every enabled format as <dir>/<stem>.<ext>; returns the written paths.
std::vector<std::filesystem::path> write_outputs(const FieldSnapshot& snap, const OutputFormats& formats,
                                                 const std::filesystem::path& dir, const std::string& stem);

}  // namespace foamlb
