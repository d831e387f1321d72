#include "handforge/selection.hpp"

#include <array>
#include <cmath>
#include <tuple>

#include "handforge/errors.hpp"
#include "handforge/kapandji.hpp"

namespace handforge {

namespace {

void validate_interval(const Interval& iv, const char* name) {
  if (iv.step <= 0.0)
    throw InvalidInput(std::string("search interval ") + name + ": step must be positive");
  if (iv.min > iv.max)
    throw InvalidInput(std::string("search interval ") + name + ": min > max");
}

std::vector<double> sequence(const Interval& iv) {
  const int count = static_cast<int>(std::floor((iv.max - iv.min) / iv.step + 1e-9));
  std::vector<double> values;
  values.reserve(static_cast<std::size_t>(count) + 1);
  for (int i = 0; i <= count; ++i) values.push_back(iv.min + i * iv.step);
  return values;
}

std::tuple<double, double, double, double> base_key(const ThumbBase& b) {
  return {b.x_mm, b.y_mm, b.z_mm, b.theta_z_deg};
}

}  // namespace

void SearchIntervals::validate() const {
  validate_interval(x_mm, "x");
  validate_interval(y_mm, "y");
  validate_interval(z_mm, "z");
  validate_interval(theta_z_deg, "theta_z");
}

SearchIntervals SearchIntervals::default_box() {
  return {{4.0, 16.0, 4.0}, {-7.0, 20.0, 9.0}, {-13.0, -1.0, 4.0}, {35.0, 55.0, 5.0}};
}

std::vector<ThumbBase> enumerate_candidates(const SearchIntervals& intervals) {
  intervals.validate();
  const auto xs = sequence(intervals.x_mm);
  const auto ys = sequence(intervals.y_mm);
  const auto zs = sequence(intervals.z_mm);
  const auto thetas = sequence(intervals.theta_z_deg);
  std::vector<ThumbBase> out;
  out.reserve(xs.size() * ys.size() * zs.size() * thetas.size());
  for (double x : xs)
    for (double y : ys)
      for (double z : zs)
        for (double th : thetas) out.push_back({x, y, z, th});
  return out;
}

CandidateRecord evaluate_candidate(const EvaluationContext& ctx,
                                   const ThumbBase& base) {
  CandidateRecord record;
  record.base = base;
  const HandModel hand = build_hand(ctx.table, ctx.placements, base);
  const KapandjiReport report = run_kapandji(hand, ctx.ik);
  record.kapandji_pass = report.pass;
  if (report.pass) {
    const OpposabilityResult oppo = evaluate_opposability(hand, ctx.opposability);
    record.toi = oppo.index;
    record.sigma_r_pct = oppo.sigma_r_pct;
    record.stored = record.sigma_r_pct.has_value() &&
                    *record.sigma_r_pct < ctx.sigma_r_threshold_pct;
  }
  return record;
}

ThumbBase select_best(const std::vector<CandidateRecord>& records,
                      double threshold_pct) {
  if (records.empty()) throw InvalidInput("select_best: empty record list");
  const CandidateRecord* best = nullptr;
  for (const CandidateRecord& r : records) {
    if (!r.kapandji_pass || !r.toi || !r.sigma_r_pct ||
        !(*r.sigma_r_pct < threshold_pct))
      continue;
    if (!best || *r.toi > *best->toi ||
        (*r.toi == *best->toi && base_key(r.base) < base_key(best->base)))
      best = &r;
  }
  if (!best)
    throw NoFeasibleCandidate(
        "no candidate passes the Kapandji gate with balance below threshold");
  return best->base;
}

}  // namespace handforge
