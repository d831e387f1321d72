#include "handforge/workspace.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>

#include "handforge/errors.hpp"

namespace handforge {

WorkspaceGrid::WorkspaceGrid(const Eigen::Vector3d& lower,
                             const Eigen::Vector3d& upper, double cell_mm)
    : origin_(lower), h_(cell_mm) {
  if (cell_mm <= 0.0) throw InvalidInput("grid cell size must be positive");
  if ((upper - lower).minCoeff() <= 0.0)
    throw InvalidInput("grid upper bound must exceed lower bound");
  for (int a = 0; a < 3; ++a)
    dims_[a] = static_cast<int>(std::ceil((upper[a] - lower[a]) / h_));
}

WorkspaceGrid WorkspaceGrid::for_hand(const HandModel& hand, double cell_mm) {
  hand.validate();
  Eigen::Vector3d lo = Eigen::Vector3d::Constant(1e30);
  Eigen::Vector3d hi = Eigen::Vector3d::Constant(-1e30);
  for (const SerialChain& chain : hand.chains) {
    double max_radius = 0.0;
    for (const LinkSpec& l : chain.links)
      max_radius = std::max(max_radius, l.radius_mm());
    const double reach = chain.total_length_mm() + 3.0 * max_radius;
    lo = lo.cwiseMin(chain.base.translation.array() - reach).matrix();
    hi = hi.cwiseMax(chain.base.translation.array() + reach).matrix();
  }
  const Eigen::Vector3d pad = Eigen::Vector3d::Constant(2.0 * cell_mm);
  return WorkspaceGrid(lo - pad, hi + pad, cell_mm);
}

std::size_t WorkspaceGrid::cell_count() const {
  return static_cast<std::size_t>(dims_[0]) * static_cast<std::size_t>(dims_[1]) *
         static_cast<std::size_t>(dims_[2]);
}

Eigen::Vector3d WorkspaceGrid::cell_center(int ix, int iy, int iz) const {
  return origin_ + h_ * Eigen::Vector3d(ix + 0.5, iy + 0.5, iz + 0.5);
}

std::size_t WorkspaceGrid::linear_index(int ix, int iy, int iz) const {
  return (static_cast<std::size_t>(iz) * static_cast<std::size_t>(dims_[1]) +
          static_cast<std::size_t>(iy)) *
             static_cast<std::size_t>(dims_[0]) +
         static_cast<std::size_t>(ix);
}

std::vector<std::uint64_t>& WorkspaceGrid::layer_bits(const LayerKey& layer) {
  auto it = layers_.find(layer);
  if (it == layers_.end()) {
    it = layers_.emplace(layer, std::vector<std::uint64_t>((cell_count() + 63) / 64, 0))
             .first;
  }
  return it->second;
}

const std::vector<std::uint64_t>* WorkspaceGrid::find_layer(
    const LayerKey& layer) const {
  auto it = layers_.find(layer);
  return it == layers_.end() ? nullptr : &it->second;
}

void WorkspaceGrid::mark_sphere(const LayerKey& layer,
                                const Eigen::Vector3d& center, double radius_mm) {
  if (radius_mm < 0.0) throw InvalidInput("sphere radius must be non-negative");
  const Eigen::Vector3d rel_lo = (center.array() - radius_mm).matrix() - origin_;
  const Eigen::Vector3d rel_hi = (center.array() + radius_mm).matrix() - origin_;
  for (int a = 0; a < 3; ++a) {
    if (rel_lo[a] < 0.0 || rel_hi[a] > dims_[a] * h_) {
      std::ostringstream os;
      os << "sphere at (" << center.transpose() << ") r=" << radius_mm
         << " exceeds grid bounds";
      throw GridTooSmall(os.str());
    }
  }
  auto& bits = layer_bits(layer);
  const int ix0 = static_cast<int>(std::floor(rel_lo[0] / h_));
  const int iy0 = static_cast<int>(std::floor(rel_lo[1] / h_));
  const int iz0 = static_cast<int>(std::floor(rel_lo[2] / h_));
  const int ix1 = std::min(dims_[0] - 1, static_cast<int>(std::floor(rel_hi[0] / h_)));
  const int iy1 = std::min(dims_[1] - 1, static_cast<int>(std::floor(rel_hi[1] / h_)));
  const int iz1 = std::min(dims_[2] - 1, static_cast<int>(std::floor(rel_hi[2] / h_)));
  const double r2 = radius_mm * radius_mm;
  for (int iz = iz0; iz <= iz1; ++iz) {
    for (int iy = iy0; iy <= iy1; ++iy) {
      for (int ix = ix0; ix <= ix1; ++ix) {
        // squared distance from the center to the cell cube
        double d2 = 0.0;
        const Eigen::Vector3d cell_lo = origin_ + h_ * Eigen::Vector3d(ix, iy, iz);
        for (int a = 0; a < 3; ++a) {
          const double c = a == 0 ? center.x() : (a == 1 ? center.y() : center.z());
          const double lo = cell_lo[a];
          const double hi = lo + h_;
          if (c < lo) d2 += (lo - c) * (lo - c);
          else if (c > hi) d2 += (c - hi) * (c - hi);
        }
        if (d2 <= r2) {
          const std::size_t idx = linear_index(ix, iy, iz);
          bits[idx / 64] |= (1ULL << (idx % 64));
        }
      }
    }
  }
}

void WorkspaceGrid::set_cell(const LayerKey& layer, int ix, int iy, int iz) {
  if (ix < 0 || iy < 0 || iz < 0 || ix >= dims_[0] || iy >= dims_[1] ||
      iz >= dims_[2])
    throw InvalidInput("cell index outside grid");
  auto& bits = layer_bits(layer);
  const std::size_t idx = linear_index(ix, iy, iz);
  bits[idx / 64] |= (1ULL << (idx % 64));
}

bool WorkspaceGrid::has_layer(const LayerKey& layer) const {
  return find_layer(layer) != nullptr;
}

std::size_t WorkspaceGrid::occupied_count(const LayerKey& layer) const {
  const auto* bits = find_layer(layer);
  if (!bits) throw InvalidInput("layer has not been sampled");
  std::size_t n = 0;
  for (std::uint64_t w : *bits) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

std::size_t WorkspaceGrid::intersection_count(const LayerKey& a,
                                              const LayerKey& b) const {
  const auto* wa = find_layer(a);
  const auto* wb = find_layer(b);
  if (!wa || !wb) throw InvalidInput("layer has not been sampled");
  std::size_t n = 0;
  for (std::size_t i = 0; i < wa->size(); ++i)
    n += static_cast<std::size_t>(std::popcount((*wa)[i] & (*wb)[i]));
  return n;
}

std::vector<Eigen::Vector3d> WorkspaceGrid::occupied_centers(
    const LayerKey& layer) const {
  const auto* bits = find_layer(layer);
  if (!bits) throw InvalidInput("layer has not been sampled");
  std::vector<Eigen::Vector3d> centers;
  for (int iz = 0; iz < dims_[2]; ++iz)
    for (int iy = 0; iy < dims_[1]; ++iy)
      for (int ix = 0; ix < dims_[0]; ++ix) {
        const std::size_t idx = linear_index(ix, iy, iz);
        if ((*bits)[idx / 64] & (1ULL << (idx % 64)))
          centers.push_back(cell_center(ix, iy, iz));
      }
  return centers;
}

void sample_workspace(const HandModel& hand, ChainId chain, Site site,
                      double joint_resolution_deg, WorkspaceGrid& grid) {
  if (joint_resolution_deg <= 0.0)
    throw InvalidInput("joint resolution must be positive");
  const SerialChain& c = hand.chain(chain);
  auto site_it = c.sites.find(site);
  if (site_it == c.sites.end())
    throw InvalidInput(std::string("chain has no site ") + to_string(site));
  const double radius =
      c.links[static_cast<std::size_t>(site_it->second.link_index)].radius_mm();

  const DriverBounds bounds = driver_bounds(c);
  const int dof = c.dof();
  const double step = deg2rad(joint_resolution_deg);
  std::vector<int> steps(static_cast<std::size_t>(dof));
  for (int i = 0; i < dof; ++i)
    steps[static_cast<std::size_t>(i)] = static_cast<int>(
        std::floor((bounds.upper[i] - bounds.lower[i]) / step + 1e-9));

  const LayerKey layer{chain, site};
  std::vector<int> counter(static_cast<std::size_t>(dof), 0);
  JointVector q(dof);
  while (true) {
    for (int i = 0; i < dof; ++i)
      q[i] = std::min(bounds.upper[i],
                      bounds.lower[i] + counter[static_cast<std::size_t>(i)] * step);
    grid.mark_sphere(layer, forward_transform(c, q, site).translation, radius);

    int axis = 0;
    while (axis < dof) {
      if (++counter[static_cast<std::size_t>(axis)] <=
          steps[static_cast<std::size_t>(axis)]) break;
      counter[static_cast<std::size_t>(axis)] = 0;
      ++axis;
    }
    if (axis == dof) break;
  }
}

Eigen::MatrixXd intersection_volumes(const WorkspaceGrid& grid) {
  const LayerKey pulp{ChainId::Thumb, Site::Pulp};
  if (!grid.has_layer(pulp))
    throw InvalidInput("thumb pulp layer has not been sampled");
  Eigen::MatrixXd v(4, 4);
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      const LayerKey key{kFingerOrder[static_cast<std::size_t>(i)],
                         kKapandjiSites[static_cast<std::size_t>(j)]};
      if (!grid.has_layer(key))
        throw InvalidInput("finger site layer has not been sampled");
      v(i, j) = static_cast<double>(grid.intersection_count(pulp, key)) *
                grid.cell_volume_mm3();
    }
  }
  return v;
}

double opposability_index(const Eigen::MatrixXd& v, const Eigen::MatrixXd& w,
                          double thumb_length_mm) {
  if (thumb_length_mm <= 0.0) throw InvalidInput("thumb length must be positive");
  if (v.rows() != w.rows() || v.cols() != w.cols())
    throw InvalidInput("volume and weight matrices must have the same shape");
  if ((w.array() < 0.0).any()) throw InvalidInput("weights must be non-negative");
  const double d3 = thumb_length_mm * thumb_length_mm * thumb_length_mm;
  return (w.array() * v.array()).sum() / d3;
}

std::optional<double> relative_std_dev(const Eigen::MatrixXd& v) {
  if (v.rows() < 1) throw InvalidInput("need at least one finger row");
  const Eigen::VectorXd per_finger = v.rowwise().sum();
  const double mean = per_finger.mean();
  if (mean == 0.0) return std::nullopt;
  const double var =
      (per_finger.array() - mean).square().sum() / static_cast<double>(per_finger.size());
  return var / mean * 100.0;
}

void OpposabilitySettings::validate() const {
  if (cell_mm <= 0.0) throw InvalidInput("cell size must be positive");
  if (joint_resolution_deg <= 0.0)
    throw InvalidInput("joint resolution must be positive");
  if (weights.rows() != 4 || weights.cols() != 4)
    throw InvalidInput("weights must be 4x4");
  if ((weights.array() < 0.0).any())
    throw InvalidInput("weights must be non-negative");
}

OpposabilityResult evaluate_opposability(const HandModel& hand,
                                         const OpposabilitySettings& settings) {
  settings.validate();
  WorkspaceGrid grid = WorkspaceGrid::for_hand(hand, settings.cell_mm);
  sample_workspace(hand, ChainId::Thumb, Site::Pulp, settings.joint_resolution_deg,
                   grid);
  for (ChainId finger : kFingerOrder)
    for (Site site : kKapandjiSites)
      sample_workspace(hand, finger, site, settings.joint_resolution_deg, grid);

  OpposabilityResult result;
  result.v_mm3 = intersection_volumes(grid);
  result.thumb_length_mm = hand.thumb_length_mm();
  result.index =
      opposability_index(result.v_mm3, settings.weights, result.thumb_length_mm);
  // Balance on cm^3 volumes: keeps sigma_r in percent territory for
  // hand-sized workspaces (the formula is not scale invariant).
  result.sigma_r_pct = relative_std_dev(result.v_mm3 / 1000.0);
  return result;
}

}  // namespace handforge
