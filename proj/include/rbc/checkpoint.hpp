#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "rbc/thermal.hpp"

namespace rbc {

/// On-disk state: manifest.json plus one raw little-endian float64 file per
/// field (theta, v, w), row-major with index j*Nx + i.
///
/// Loading takes the stored velocity as is, so save(load(dir)) reproduces the
/// directory byte for byte.
void save_checkpoint(const std::filesystem::path& dir, const SimState& s);
/// Throws on a missing/invalid manifest or a payload whose length does not
/// match the declared shape.
SimState load_checkpoint(const std::filesystem::path& dir);

/// Snapshot sequences are stored as dir/snap_000, dir/snap_001, ...
void save_snapshots(const std::filesystem::path& dir, const std::vector<SimState>& snaps);
/// Empty when dir does not exist.
std::vector<SimState> load_snapshots(const std::filesystem::path& dir);

}  // namespace rbc
