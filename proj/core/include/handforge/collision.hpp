#pragma once

#include <Eigen/Dense>

namespace handforge {

struct Segment {
  Eigen::Vector3d a;
  Eigen::Vector3d b;
};

/// Minimum distance between two segments. Degenerate (zero-length)
/// segments are treated as points.
double segment_distance(const Segment& s, const Segment& t);

/// Signed clearance between two capsules: segment distance minus the sum
/// of the radii. Negative means penetration. A zero-length capsule is a
/// sphere.
double capsule_distance(const Segment& seg_a, double r_a,
                        const Segment& seg_b, double r_b);

}  // namespace handforge
