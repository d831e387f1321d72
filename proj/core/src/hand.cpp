#include "handforge/hand.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "handforge/collision.hpp"
#include "handforge/errors.hpp"

namespace handforge {

bool is_finger(ChainId id) { return id != ChainId::Thumb; }

const char* to_string(ChainId id) {
  switch (id) {
    case ChainId::Thumb: return "thumb";
    case ChainId::Index: return "index";
    case ChainId::Middle: return "middle";
    case ChainId::Ring: return "ring";
    case ChainId::Little: return "little";
  }
  return "?";
}

ChainId chain_from_string(const std::string& name) {
  if (name == "thumb") return ChainId::Thumb;
  if (name == "index") return ChainId::Index;
  if (name == "middle") return ChainId::Middle;
  if (name == "ring") return ChainId::Ring;
  if (name == "little") return ChainId::Little;
  throw InvalidInput("unknown chain name: " + name);
}

double AnthropometricTable::chain_length_mm(ChainId id) const {
  const auto& dims = of(id);
  return dims[0].length_mm + dims[1].length_mm + dims[2].length_mm;
}

void AnthropometricTable::validate() const {
  if (hand_length_mm <= 0.0) throw InvalidInput("hand length must be positive");
  for (const auto& chain : links)
    for (const auto& l : chain)
      if (l.length_mm <= 0.0 || l.width_mm <= 0.0)
        throw InvalidInput("anthropometric link with non-positive length or width");
}

AnthropometricTable AnthropometricTable::child_hand() {
  AnthropometricTable t;
  t.hand_length_mm = 127.5;
  t.of(ChainId::Thumb) = {{{30.8, 25.0}, {22.6, 16.0}, {20.7, 16.0}}};
  t.of(ChainId::Index) = {{{26.4, 15.0}, {17.1, 14.0}, {16.8, 13.0}}};
  t.of(ChainId::Middle) = {{{29.7, 15.0}, {19.1, 14.0}, {18.2, 13.0}}};
  t.of(ChainId::Ring) = {{{26.9, 15.0}, {18.5, 14.0}, {18.1, 13.0}}};
  t.of(ChainId::Little) = {{{21.4, 13.0}, {13.1, 12.0}, {15.7, 11.0}}};
  return t;
}

std::array<std::array<double, 3>, 5> default_link_fractions() {
  const AnthropometricTable ref = AnthropometricTable::child_hand();
  std::array<std::array<double, 3>, 5> fractions{};
  for (int c = 0; c < 5; ++c)
    for (int l = 0; l < 3; ++l)
      fractions[c][l] = ref.links[c][l].length_mm / ref.hand_length_mm;
  return fractions;
}

std::array<std::array<double, 3>, 5> default_link_widths() {
  const AnthropometricTable ref = AnthropometricTable::child_hand();
  std::array<std::array<double, 3>, 5> widths{};
  for (int c = 0; c < 5; ++c)
    for (int l = 0; l < 3; ++l) widths[c][l] = ref.links[c][l].width_mm;
  return widths;
}

AnthropometricTable scale_proportions(
    double hand_length_mm,
    const std::array<std::array<double, 3>, 5>& fractions,
    const std::array<std::array<double, 3>, 5>& widths_mm) {
  if (hand_length_mm <= 0.0) throw InvalidInput("hand length must be positive");
  AnthropometricTable t;
  t.hand_length_mm = hand_length_mm;
  for (int c = 0; c < 5; ++c) {
    for (int l = 0; l < 3; ++l) {
      const double f = fractions[c][l];
      const double w = widths_mm[c][l];
      if (f <= 0.0 || f >= 1.0)
        throw InvalidInput("link fraction outside (0, 1)");
      if (w <= 0.0) throw InvalidInput("link width must be positive");
      t.links[c][l] = {f * hand_length_mm, w};
    }
  }
  return t;
}

void FingerPlacement::validate() const {
  if (!is_finger(finger)) throw InvalidInput("placement refers to the thumb");
  if (std::abs(orientation_deg) > 45.0)
    throw InvalidInput("finger base orientation outside [-45, 45] deg");
}

std::vector<FingerPlacement> reference_placements() {
  return {
      {ChainId::Index, {59.3, 18.1, -1.8}, 7.03},
      {ChainId::Middle, {60.5, 0.0, 0.0}, 0.0},
      {ChainId::Ring, {56.1, -17.2, -2.7}, -5.1},
      {ChainId::Little, {46.1, -31.1, -6.8}, -7.27},
  };
}

SerialChain build_finger_chain(const std::array<LinkDims, 3>& dims,
                               const FingerPlacement& placement) {
  placement.validate();
  SerialChain c;
  c.base = Transform::from_translation(placement.position_mm) *
           Transform::rotation_z(deg2rad(placement.orientation_deg));
  // Three parallel hinges about local y, all coupled to one driver; a
  // positive angle flexes toward the palm (-z).
  for (int k = 0; k < 3; ++k) {
    JointSpec j;
    j.axis = Eigen::Vector3d::UnitY();
    j.driver_index = 0;
    c.joints.push_back(j);
    c.links.push_back({dims[k].length_mm, dims[k].width_mm});
  }
  const double r0 = 0.5 * dims[0].width_mm;
  const double r1 = 0.5 * dims[1].width_mm;
  const double r2 = 0.5 * dims[2].width_mm;
  const double l2 = dims[2].length_mm;
  c.sites[Site::Mcp] = {0, Transform::from_translation({0.0, 0.0, -r0})};
  c.sites[Site::Pip] = {1, Transform::from_translation({0.0, 0.0, -r1})};
  c.sites[Site::Dip] = {2, Transform::from_translation({0.0, 0.0, -r2})};
  c.sites[Site::Tip] = {2, Transform::from_translation({l2, 0.0, 0.0})};
  c.sites[Site::Pulp] = {2, Transform::from_translation({l2, 0.0, -r2})};
  c.validate();
  return c;
}

SerialChain build_thumb_chain(const std::array<LinkDims, 3>& dims,
                              const ThumbBase& base) {
  SerialChain c;
  c.base = Transform::from_translation({base.x_mm, base.y_mm, base.z_mm}) *
           Transform::rotation_z(deg2rad(base.theta_z_deg));
  // Two-hinge base: a roll about the metacarpal axis that carries the
  // flexion plane from the palm plane down across the palm, then a flexion
  // hinge. Zero-length connector between the two base hinges.
  JointSpec roll;
  roll.axis = -Eigen::Vector3d::UnitX();
  roll.driver_index = 0;
  c.joints.push_back(roll);
  c.links.push_back({0.0, dims[0].width_mm});

  JointSpec cmc_flex;
  cmc_flex.axis = Eigen::Vector3d::UnitY();
  cmc_flex.driver_index = 1;
  c.joints.push_back(cmc_flex);
  c.links.push_back({dims[0].length_mm, dims[0].width_mm});

  // MCP and IP flex together, 1:1.
  JointSpec mcp;
  mcp.axis = Eigen::Vector3d::UnitY();
  mcp.driver_index = 2;
  c.joints.push_back(mcp);
  c.links.push_back({dims[1].length_mm, dims[1].width_mm});

  JointSpec ip;
  ip.axis = Eigen::Vector3d::UnitY();
  ip.driver_index = 2;
  c.joints.push_back(ip);
  c.links.push_back({dims[2].length_mm, dims[2].width_mm});

  const double r_prox = 0.5 * dims[1].width_mm;
  const double r_dist = 0.5 * dims[2].width_mm;
  const double l_dist = dims[2].length_mm;
  c.sites[Site::Mcp] = {2, Transform::from_translation({0.0, 0.0, -r_prox})};
  c.sites[Site::Dip] = {3, Transform::from_translation({0.0, 0.0, -r_dist})};
  c.sites[Site::Tip] = {3, Transform::from_translation({l_dist, 0.0, 0.0})};
  c.sites[Site::Pulp] = {3, Transform::from_translation({l_dist, 0.0, -r_dist})};
  c.validate();
  return c;
}

const SerialChain& HandModel::chain(ChainId id) const {
  return chains.at(static_cast<std::size_t>(id));
}

SerialChain& HandModel::chain(ChainId id) {
  return chains.at(static_cast<std::size_t>(id));
}

double HandModel::thumb_length_mm() const {
  return chain(ChainId::Thumb).total_length_mm();
}

void HandModel::validate() const {
  if (chains.size() != 5)
    throw InvalidInput("hand model must contain exactly five chains");
  const SerialChain& thumb = chain(ChainId::Thumb);
  if (thumb.joint_count() != 4 || thumb.dof() != 3)
    throw InvalidInput("thumb must have 4 joints and 3 independent variables");
  for (ChainId f : kFingerOrder) {
    const SerialChain& c = chain(f);
    if (c.joint_count() != 3 || c.dof() != 1)
      throw InvalidInput("finger must have 3 joints and 1 independent variable");
  }
  for (const auto& c : chains) c.validate();
}

HandModel build_hand(const AnthropometricTable& table,
                     const std::vector<FingerPlacement>& placements,
                     const ThumbBase& thumb) {
  table.validate();
  if (placements.size() != 4)
    throw InvalidInput("expected one placement per finger");
  std::set<ChainId> seen;
  for (const auto& p : placements) {
    p.validate();
    if (!seen.insert(p.finger).second)
      throw InvalidInput("duplicate finger placement");
  }

  HandModel hand;
  hand.chains.resize(5);
  hand.chain(ChainId::Thumb) = build_thumb_chain(table.of(ChainId::Thumb), thumb);
  for (const auto& p : placements)
    hand.chain(p.finger) = build_finger_chain(table.of(p.finger), p);
  hand.validate();
  return hand;
}

std::vector<FingerPlacement> place_finger_bases(
    const AnthropometricTable& table,
    const std::array<double, 4>& angular_offsets_deg) {
  table.validate();
  if (angular_offsets_deg[1] != 0.0)
    throw InvalidInput("middle finger offset must be 0");
  for (double phi : angular_offsets_deg)
    if (std::abs(phi) >= 90.0)
      throw InvalidInput("angular offset must satisfy |phi| < 90 deg");

  const double l_middle = table.chain_length_mm(ChainId::Middle);
  const Eigen::Vector3d center(table.hand_length_mm - l_middle, 0.0, 0.0);

  // Flexed-fingertip z relative to the base, from forward kinematics at 90
  // degrees. Independent of the base orientation.
  auto flexed_tip_rel_z = [&table](ChainId f) {
    FingerPlacement at_origin{f, Eigen::Vector3d::Zero(), 0.0};
    const SerialChain c = build_finger_chain(table.of(f), at_origin);
    JointVector q(1);
    q << deg2rad(90.0);
    return forward_transform(c, q, Site::Tip).translation.z();
  };

  ChainId longest = ChainId::Index;
  for (ChainId f : kFingerOrder)
    if (table.chain_length_mm(f) > table.chain_length_mm(longest)) longest = f;
  const double plane_z = flexed_tip_rel_z(longest);

  std::vector<FingerPlacement> placements;
  for (int i = 0; i < 4; ++i) {
    const ChainId f = kFingerOrder[static_cast<std::size_t>(i)];
    const double phi = deg2rad(angular_offsets_deg[static_cast<std::size_t>(i)]);
    const double radial = l_middle - table.chain_length_mm(f);
    Eigen::Vector3d pos =
        center + radial * Eigen::Vector3d(std::cos(phi), std::sin(phi), 0.0);
    pos.z() = plane_z - flexed_tip_rel_z(f);
    placements.push_back(
        {f, pos, angular_offsets_deg[static_cast<std::size_t>(i)]});
  }
  return placements;
}

namespace {

struct CapsuleSet {
  std::array<Segment, 3> segments;
  std::array<double, 3> radii;
};

CapsuleSet link_capsules(const SerialChain& chain, const ChainPose& pose) {
  CapsuleSet set{};
  for (int k = 0; k < 3; ++k) {
    const Transform& frame = pose.link_frames[static_cast<std::size_t>(k)];
    set.segments[static_cast<std::size_t>(k)] = {
        frame.translation,
        frame * Eigen::Vector3d(chain.links[static_cast<std::size_t>(k)].length_mm,
                                0.0, 0.0)};
    set.radii[static_cast<std::size_t>(k)] =
        chain.links[static_cast<std::size_t>(k)].radius_mm();
  }
  return set;
}

bool sets_clear(const CapsuleSet& a, const CapsuleSet& b) {
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (capsule_distance(a.segments[static_cast<std::size_t>(i)],
                           a.radii[static_cast<std::size_t>(i)],
                           b.segments[static_cast<std::size_t>(j)],
                           b.radii[static_cast<std::size_t>(j)]) <= 0.0)
        return false;
  return true;
}

}  // namespace

double max_inclination(const HandModel& hand, ChainId moving, ChainId reference,
                       double cap_deg, double inclination_step_deg,
                       double flexion_step_deg) {
  hand.validate();
  if (!is_finger(moving) || !is_finger(reference))
    throw InvalidInput("max_inclination expects two fingers");
  if (std::abs(static_cast<int>(moving) - static_cast<int>(reference)) != 1)
    throw InvalidInput("max_inclination expects an adjacent finger pair");
  if (cap_deg <= 0.0 || cap_deg > 45.0)
    throw InvalidInput("cap must lie in (0, 45] deg");
  if (inclination_step_deg <= 0.0 || flexion_step_deg <= 0.0)
    throw InvalidInput("sweep steps must be positive");

  const SerialChain& ref_chain = hand.chain(reference);
  const SerialChain& mov_chain = hand.chain(moving);
  const Eigen::Vector3d mov_pos = mov_chain.base.translation;
  const double sign =
      mov_pos.y() > ref_chain.base.translation.y() ? 1.0 : -1.0;

  const int flex_steps = static_cast<int>(std::floor(90.0 / flexion_step_deg + 0.5));
  std::vector<CapsuleSet> ref_sets;
  std::vector<CapsuleSet> mov_local;  // moving finger at origin, orientation 0
  ref_sets.reserve(static_cast<std::size_t>(flex_steps) + 1);
  mov_local.reserve(static_cast<std::size_t>(flex_steps) + 1);

  SerialChain mov_origin = mov_chain;
  mov_origin.base = Transform::identity();
  for (int i = 0; i <= flex_steps; ++i) {
    JointVector q(1);
    q << deg2rad(std::min(90.0, i * flexion_step_deg));
    ref_sets.push_back(link_capsules(ref_chain, evaluate_chain(ref_chain, q)));
    mov_local.push_back(link_capsules(mov_origin, evaluate_chain(mov_origin, q)));
  }

  auto placed = [&](const CapsuleSet& local, const Transform& base) {
    CapsuleSet out = local;
    for (auto& seg : out.segments) {
      seg.a = base * seg.a;
      seg.b = base * seg.b;
    }
    return out;
  };

  const int incl_steps = static_cast<int>(std::floor(cap_deg / inclination_step_deg + 0.5));
  double largest_clear = 0.0;
  for (int s = 1; s <= incl_steps; ++s) {
    const double incl = std::min(cap_deg, s * inclination_step_deg);
    const Transform base = Transform::from_translation(mov_pos) *
                           Transform::rotation_z(sign * deg2rad(incl));
    bool clear = true;
    for (std::size_t m = 0; clear && m < mov_local.size(); ++m) {
      const CapsuleSet mov = placed(mov_local[m], base);
      for (const CapsuleSet& ref : ref_sets) {
        if (!sets_clear(mov, ref)) {
          clear = false;
          break;
        }
      }
    }
    if (!clear) break;
    largest_clear = incl;
  }
  return largest_clear;
}

}  // namespace handforge
