#include "handforge/collision.hpp"

#include <algorithm>
#include <cmath>

namespace handforge {

namespace {
double clamp01(double x) { return std::clamp(x, 0.0, 1.0); }
}  // namespace

// Closest-point parameters via the clamped quadratic (Ericson, Real-Time
// Collision Detection, 5.1.9).
double segment_distance(const Segment& s, const Segment& t) {
  const Eigen::Vector3d d1 = s.b - s.a;
  const Eigen::Vector3d d2 = t.b - t.a;
  const Eigen::Vector3d r = s.a - t.a;
  const double a = d1.squaredNorm();
  const double e = d2.squaredNorm();
  const double f = d2.dot(r);

  double sp = 0.0, tp = 0.0;
  constexpr double kEps = 1e-18;

  if (a <= kEps && e <= kEps) {
    // point vs point
  } else if (a <= kEps) {
    tp = clamp01(f / e);
  } else {
    const double c = d1.dot(r);
    if (e <= kEps) {
      sp = clamp01(-c / a);
    } else {
      const double b = d1.dot(d2);
      const double denom = a * e - b * b;
      if (denom > kEps) sp = clamp01((b * f - c * e) / denom);
      tp = (b * sp + f) / e;
      if (tp < 0.0) {
        tp = 0.0;
        sp = clamp01(-c / a);
      } else if (tp > 1.0) {
        tp = 1.0;
        sp = clamp01((b - c) / a);
      }
    }
  }
  return ((s.a + sp * d1) - (t.a + tp * d2)).norm();
}

double capsule_distance(const Segment& seg_a, double r_a,
                        const Segment& seg_b, double r_b) {
  return segment_distance(seg_a, seg_b) - (r_a + r_b);
}

}  // namespace handforge
