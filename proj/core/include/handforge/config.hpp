#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "handforge/selection.hpp"

namespace handforge {

/// One structured document describing an entire design run: hand
/// proportions, finger placements, the thumb search box, solver and
/// sampling settings. Every field has a default; schema_version guards
/// future changes.
struct HandSpecDocument {
  enum class PlacementMode { Reference, Generate, Explicit };

  int schema_version = 1;
  std::uint64_t seed = 1;

  double hand_length_mm = 127.5;
  std::array<std::array<double, 3>, 5> fractions = default_link_fractions();
  std::array<std::array<double, 3>, 5> widths_mm = default_link_widths();

  PlacementMode placement_mode = PlacementMode::Reference;
  std::array<double, 4> angular_offsets_deg = {15.0, 0.0, -15.0, -30.0};
  std::vector<FingerPlacement> explicit_placements;

  SearchIntervals search = SearchIntervals::default_box();
  IkSettings ik;
  OpposabilitySettings opposability;
  double sigma_r_threshold_pct = 20.0;

  AnthropometricTable make_table() const;
  std::vector<FingerPlacement> make_placements() const;
};

/// Parse from JSON text; errors carry the offending field path.
HandSpecDocument parse_spec_document(const std::string& json_text);

HandSpecDocument load_spec_document(const std::filesystem::path& path);

}  // namespace handforge
