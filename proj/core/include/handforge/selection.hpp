#pragma once

#include <optional>
#include <vector>

#include "handforge/hand.hpp"
#include "handforge/ik.hpp"
#include "handforge/workspace.hpp"

namespace handforge {

struct Interval {
  double min = 0.0;
  double max = 0.0;
  double step = 1.0;
};

/// Brute-force search box over the thumb base parameters.
struct SearchIntervals {
  Interval x_mm;
  Interval y_mm;
  Interval z_mm;
  Interval theta_z_deg;

  void validate() const;

  /// Bounding box of the reference candidate set, one step of margin.
  static SearchIntervals default_box();
};

/// Cartesian product of the four arithmetic sequences, lexicographic in
/// (x, y, z, theta_z).
std::vector<ThumbBase> enumerate_candidates(const SearchIntervals& intervals);

struct CandidateRecord {
  ThumbBase base;
  bool kapandji_pass = false;
  std::optional<double> toi;
  std::optional<double> sigma_r_pct;
  bool stored = false;
};

/// Everything needed to evaluate one thumb base: the hand geometry it gets
/// attached to and the solver/sampling settings.
struct EvaluationContext {
  AnthropometricTable table = AnthropometricTable::child_hand();
  std::vector<FingerPlacement> placements = reference_placements();
  IkSettings ik;
  OpposabilitySettings opposability;
  double sigma_r_threshold_pct = 20.0;
};

/// Build the hand at this base, gate on the Kapandji test, then compute
/// the opposability index and balance. All failure modes land in the
/// record.
CandidateRecord evaluate_candidate(const EvaluationContext& ctx,
                                   const ThumbBase& base);

/// Highest-index candidate among those passing the Kapandji gate with a
/// balance below the threshold; ties broken by lexicographically smallest
/// base. Throws NoFeasibleCandidate when the feasible set is empty.
ThumbBase select_best(const std::vector<CandidateRecord>& records,
                      double threshold_pct = 20.0);

}  // namespace handforge
