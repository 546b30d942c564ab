#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "ideation/network.hpp"

namespace ideation {

/// Current snapshot format version. Bump on any layout change.
inline constexpr int kSnapshotVersion = 1;

/// Line-delimited JSON: a header line, then the papers, nodes, edges and
/// relations sections (each introduced by a {"section":..,"count":..} line),
/// then an end marker. Output is sorted, so equal networks save to equal bytes.
std::string snapshot_save(const SciNetwork& net);

/// Throws SnapshotVersion on a version mismatch and SnapshotCorrupt on any
/// malformed, truncated, or inconsistent payload.
SciNetwork snapshot_load(std::string_view bytes);

void snapshot_save_file(const SciNetwork& net, const std::filesystem::path& path);
SciNetwork snapshot_load_file(const std::filesystem::path& path);

} // namespace ideation
