#pragma once

#include <array>
#include <vector>

#include "handforge/hand.hpp"
#include "handforge/ik.hpp"

namespace handforge {

inline constexpr std::array<Site, 4> kKapandjiSites = {Site::Mcp, Site::Pip,
                                                       Site::Dip, Site::Tip};

/// One of the 16 opposition targets: a finger site whose palmar surface
/// point the thumb pulp has to reach.
struct KapandjiTarget {
  ChainId finger;
  Site site;
  Transform surface_frame;  // on the finger surface, extended configuration
};

/// Targets in fixed order: index, middle, ring, little x MCP, PIP, DIP,
/// TIP. Surface frames sit on the palmar capsule surface at each site.
std::vector<KapandjiTarget> generate_targets(const HandModel& hand);

struct KapandjiEntry {
  ChainId finger;
  Site site;
  bool reached = false;
  IkResult solve;
};

struct KapandjiReport {
  std::vector<KapandjiEntry> entries;  // exactly 16, target order
  bool pass = false;                   // all 16 reached
};

/// Runs the constrained solver against every target, starting from the
/// mid-range configuration plus the settings' random restarts.
KapandjiReport run_kapandji(const HandModel& hand, const IkSettings& settings);

}  // namespace handforge
