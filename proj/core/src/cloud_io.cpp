#include "handforge/cloud_io.hpp"

#include <cstdio>
#include <fstream>

#include "handforge/errors.hpp"

namespace handforge {

CloudFormat cloud_format_from_string(const std::string& name) {
  if (name == "ply") return CloudFormat::Ply;
  if (name == "csv") return CloudFormat::Csv;
  throw InvalidInput("unknown cloud format: " + name + " (expected ply or csv)");
}

const char* to_string(CloudFormat f) {
  return f == CloudFormat::Ply ? "ply" : "csv";
}

void export_cloud(const WorkspaceGrid& grid, const LayerKey& layer,
                  CloudFormat format, const std::filesystem::path& path) {
  const std::vector<Eigen::Vector3d> points = grid.occupied_centers(layer);
  std::ofstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open " + path.string());

  if (format == CloudFormat::Ply) {
    file << "ply\n"
         << "format binary_little_endian 1.0\n"
         << "comment handforge occupancy layer " << to_string(layer.chain) << ":"
         << to_string(layer.site) << "\n"
         << "element vertex " << points.size() << "\n"
         << "property float x\n"
         << "property float y\n"
         << "property float z\n"
         << "end_header\n";
    for (const auto& p : points) {
      const float xyz[3] = {static_cast<float>(p.x()), static_cast<float>(p.y()),
                            static_cast<float>(p.z())};
      file.write(reinterpret_cast<const char*>(xyz), sizeof(xyz));
    }
  } else {
    file << "x_mm,y_mm,z_mm\n";
    char line[96];
    for (const auto& p : points) {
      std::snprintf(line, sizeof(line), "%.6f,%.6f,%.6f\n", p.x(), p.y(), p.z());
      file << line;
    }
  }
  if (!file) throw std::runtime_error("write failed: " + path.string());
}

}  // namespace handforge
