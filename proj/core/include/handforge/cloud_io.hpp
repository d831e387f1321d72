#pragma once

#include <filesystem>
#include <string>

#include "handforge/workspace.hpp"

namespace handforge {

enum class CloudFormat { Ply, Csv };

CloudFormat cloud_format_from_string(const std::string& name);
const char* to_string(CloudFormat f);

/// Write the occupied cell centers of one layer as a point cloud, either
/// binary little-endian PLY or a plain x,y,z CSV (mm).
void export_cloud(const WorkspaceGrid& grid, const LayerKey& layer,
                  CloudFormat format, const std::filesystem::path& path);

}  // namespace handforge
