#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "blowup/field.hpp"

namespace blowup {

// Snapshot layout: one ASCII header line
//   dim nx [ny [nz]] hx [hy [hz]] ox [oy [oz]] components
// followed either by CSV rows (one cell per row, components comma-separated,
// row-major cell order) or, for the binary variant, little-endian IEEE-754
// float64 values with components interleaved per cell.
enum class SnapshotFormat { csv, binary };


void write_snapshot(const std::filesystem::path& path, const std::vector<const Field*>& fields,
                    SnapshotFormat format);
// The payload kind is taken from the extension: `.bin` is binary, anything
// else CSV. Reads back a flat list of `components` scalar fields on the stored grid.
// Periodicity is not part of the format; `periodic` is applied to every axis.
std::vector<Field> read_snapshot(const std::filesystem::path& path, bool periodic = true);

std::string snapshot_header(const Grid& g, int components);

}  // namespace blowup
