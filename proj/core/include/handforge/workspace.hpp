#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "handforge/hand.hpp"

namespace handforge {

/// Identifies one occupancy layer: where a given site of a given chain can
/// put material while its joint space is swept.
struct LayerKey {
  ChainId chain;
  Site site;

  bool operator<(const LayerKey& o) const {
    return chain != o.chain ? chain < o.chain : site < o.site;
  }
  bool operator==(const LayerKey& o) const {
    return chain == o.chain && site == o.site;
  }
};

/// Axis-aligned voxel grid over the hand workspace with one occupancy
/// bitset per layer. Cell (ix,iy,iz) spans
/// origin + h*[ix, ix+1) x [iy, iy+1) x [iz, iz+1).
class WorkspaceGrid {
 public:
  WorkspaceGrid(const Eigen::Vector3d& lower, const Eigen::Vector3d& upper,
                double cell_mm);

  /// Bounds that cover every reachable sphere of every chain, padded by
  /// two cells.
  static WorkspaceGrid for_hand(const HandModel& hand, double cell_mm);

  double cell_mm() const { return h_; }
  double cell_volume_mm3() const { return h_ * h_ * h_; }
  const Eigen::Vector3d& origin() const { return origin_; }
  const Eigen::Vector3i& dims() const { return dims_; }
  std::size_t cell_count() const;

  Eigen::Vector3d cell_center(int ix, int iy, int iz) const;

  /// Marks every cell whose cube intersects the ball. Throws GridTooSmall
  /// if the ball pokes outside the grid.
  void mark_sphere(const LayerKey& layer, const Eigen::Vector3d& center,
                   double radius_mm);

  /// Direct cell marking, for synthetic layers.
  void set_cell(const LayerKey& layer, int ix, int iy, int iz);

  bool has_layer(const LayerKey& layer) const;
  std::size_t occupied_count(const LayerKey& layer) const;
  std::size_t intersection_count(const LayerKey& a, const LayerKey& b) const;

  /// Centers of occupied cells in ascending linear-index order.
  std::vector<Eigen::Vector3d> occupied_centers(const LayerKey& layer) const;

 private:
  std::vector<std::uint64_t>& layer_bits(const LayerKey& layer);
  const std::vector<std::uint64_t>* find_layer(const LayerKey& layer) const;
  std::size_t linear_index(int ix, int iy, int iz) const;

  Eigen::Vector3d origin_;
  double h_;
  Eigen::Vector3i dims_;
  std::map<LayerKey, std::vector<std::uint64_t>> layers_;
};

/// Sweep the chain's independent joint space at the given resolution and
/// mark, for every configuration, the cells touched by the site sphere
/// (radius = the site link's half-width).
void sample_workspace(const HandModel& hand, ChainId chain, Site site,
                      double joint_resolution_deg, WorkspaceGrid& grid);

/// 4 x 4 intersection volumes (mm^3): fingers in kFingerOrder by rows,
/// kKapandjiSites order (MCP, PIP, DIP, TIP) by columns, each against the
/// thumb pulp layer.
Eigen::MatrixXd intersection_volumes(const WorkspaceGrid& grid);

/// Weighted intersection volume normalized by the cubed thumb length:
/// sum_ij w_ij v_ij / d_t^3.
double opposability_index(const Eigen::MatrixXd& v, const Eigen::MatrixXd& w,
                          double thumb_length_mm);

/// Balance of the per-finger volumes v_i = sum_j v_ij, as printed in the
/// source formula: 100 * (sum_i (v_i - mean)^2 / k) / mean. Returns
/// nullopt when the mean is zero (all-empty intersection).
std::optional<double> relative_std_dev(const Eigen::MatrixXd& v);

struct OpposabilitySettings {
  double cell_mm = 2.0;
  double joint_resolution_deg = 3.0;
  Eigen::MatrixXd weights = Eigen::MatrixXd::Ones(4, 4);

  void validate() const;
};

struct OpposabilityResult {
  Eigen::MatrixXd v_mm3;                // 4 x 4 intersection volumes
  double index = 0.0;                   // thumb opposability index
  std::optional<double> sigma_r_pct;    // balance score
  double thumb_length_mm = 0.0;
};

/// Full evaluation: sample the thumb pulp and all sixteen finger site
/// layers, intersect, and reduce. The balance score is evaluated on
/// volumes in cm^3 so the percentage stays in a meaningful range at hand
/// scale.
OpposabilityResult evaluate_opposability(const HandModel& hand,
                                         const OpposabilitySettings& settings);

}  // namespace handforge
