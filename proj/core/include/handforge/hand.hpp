#pragma once

#include <array>
#include <string>
#include <vector>

#include "handforge/chain.hpp"

namespace handforge {

enum class ChainId { Thumb = 0, Index = 1, Middle = 2, Ring = 3, Little = 4 };

inline constexpr std::array<ChainId, 4> kFingerOrder = {
    ChainId::Index, ChainId::Middle, ChainId::Ring, ChainId::Little};

bool is_finger(ChainId id);
const char* to_string(ChainId id);
ChainId chain_from_string(const std::string& name);

struct LinkDims {
  double length_mm = 0.0;
  double width_mm = 0.0;
};

/// Link lengths and widths for the five chains, three links each. For the
/// thumb the links are carpometacarpal, proximal and distal; for fingers
/// proximal, middle and distal phalanx. hand_length_mm is the wrist to
/// middle-fingertip distance the table was scaled for.
struct AnthropometricTable {
  std::array<std::array<LinkDims, 3>, 5> links{};
  double hand_length_mm = 0.0;

  const std::array<LinkDims, 3>& of(ChainId id) const {
    return links[static_cast<int>(id)];
  }
  std::array<LinkDims, 3>& of(ChainId id) { return links[static_cast<int>(id)]; }

  double chain_length_mm(ChainId id) const;
  void validate() const;

  /// Reference dimensions for a child-sized hand (127.5 mm hand length).
  static AnthropometricTable child_hand();
};

/// Link lengths of the reference table expressed as fractions of its hand
/// length, and the matching widths.
std::array<std::array<double, 3>, 5> default_link_fractions();
std::array<std::array<double, 3>, 5> default_link_widths();

/// Scale link fractions by a hand length. Widths pass through unchanged.
AnthropometricTable scale_proportions(
    double hand_length_mm,
    const std::array<std::array<double, 3>, 5>& fractions,
    const std::array<std::array<double, 3>, 5>& widths_mm);

/// Where a finger chain attaches to the palm: position in the hand frame
/// and orientation about z.
struct FingerPlacement {
  ChainId finger = ChainId::Index;
  Eigen::Vector3d position_mm = Eigen::Vector3d::Zero();
  double orientation_deg = 0.0;

  void validate() const;
};

/// Reference finger base placements for the child-sized hand.
std::vector<FingerPlacement> reference_placements();

/// Thumb attachment: position plus orientation about z.
struct ThumbBase {
  double x_mm = 0.0;
  double y_mm = 0.0;
  double z_mm = 0.0;
  double theta_z_deg = 0.0;
};

/// Generate finger placements from the fingertip circle: bases at
/// center + (L_middle - L_f) * (cos phi, sin phi, 0) so extended tips lie
/// on the circle of radius L_middle about the middle MCP, with base z
/// chosen so fully flexed fingertips share one xy plane.
/// angular_offsets_deg follows kFingerOrder; the middle offset must be 0.
std::vector<FingerPlacement> place_finger_bases(
    const AnthropometricTable& table,
    const std::array<double, 4>& angular_offsets_deg);

/// The five chains in a common hand frame: origin at the wrist, x toward
/// the fingers, y toward the thumb side, z out of the back of the hand.
struct HandModel {
  std::vector<SerialChain> chains;  // indexed by ChainId

  const SerialChain& chain(ChainId id) const;
  SerialChain& chain(ChainId id);
  double thumb_length_mm() const;
  void validate() const;
};

SerialChain build_finger_chain(const std::array<LinkDims, 3>& dims,
                               const FingerPlacement& placement);
SerialChain build_thumb_chain(const std::array<LinkDims, 3>& dims,
                              const ThumbBase& base);

HandModel build_hand(const AnthropometricTable& table,
                     const std::vector<FingerPlacement>& placements,
                     const ThumbBase& thumb);

/// Largest inclination (degrees, magnitude) of the moving finger's base
/// orientation for which every flexion combination of the pair keeps all
/// link capsules clear, swept from 0 toward the reference finger. Sweep
/// resolution defaults to 0.1 deg inclination and 1 deg flexion.
double max_inclination(const HandModel& hand, ChainId moving, ChainId reference,
                       double cap_deg, double inclination_step_deg = 0.1,
                       double flexion_step_deg = 1.0);

}  // namespace handforge
