#pragma once

#include "tilecocycle/substitution.hpp"

#include <map>
#include <vector>

namespace tc {

// One chosen digit per (rule, parent); fixes control points and the canonical
// position of every supertile.
struct ChoiceFunction {
  std::vector<std::vector<int>> chosen;  // [rule][parent] -> digit index

  static ChoiceFunction lexicographic(const SubstitutionSystem& sys);
};

struct ControlPointTable {
  std::vector<IVec> anchor;                 // exact module coords (valid when exact)
  std::vector<Eigen::VectorXd> anchor_real;
  bool exact = false;   // every chosen digit had offset zero -> anchors are exactly 0
  int depth = 0;
  double residual = 0.0;
  std::vector<bool> boundary;  // anchor sits on the upper/right tile boundary
};

// Nested-fixed-point control points along the negative tail (extended
// periodically when shorter than the convergence depth).
ControlPointTable control_points(const SubstitutionSystem& sys,
                                 const std::vector<int>& minus_tail,
                                 const ChoiceFunction& c, double tol = 1e-12);

// Scale_m = Mtheta_{x_m} ... Mtheta_{x_1}; element [0] is the identity.
std::vector<IMat> scale_matrices(const SubstitutionSystem& sys,
                                 const std::vector<int>& x, int n);

// Products theta_bar_{(m)} = theta_bar_{x_m} ... theta_bar_{x_1}; [0] = 1.
std::vector<double> theta_products(const SubstitutionSystem& sys,
                                   const std::vector<int>& x, int n);

// Canonical level-k supertile of the given top type, corner at the origin,
// in exact module coordinates. x holds the letters x_1..x_k (bottom-up).
Patch canonical_patch(const SubstitutionSystem& sys, const std::vector<int>& x,
                      int k, int type);

// Digit indices read top-down: digit[0] at level k, ..., digit[k-1] at level 1.
struct PathAddress {
  std::vector<int> digit;
};

// The approximant patch P_k: canonical supertile translated so the tile
// selected by the path sits at the origin.
Patch approximant(const SubstitutionSystem& sys, const std::vector<int>& x,
                  int top_type, const PathAddress& path);

// Level-k offset table U_{i,j,k}: for each (parent i, child j) the exact
// control-point-relative offsets of the level-(k-1) type-j supertiles inside a
// level-k type-i supertile (Scale_{k-1}-scaled W offsets of rule x_k).
std::vector<std::vector<std::vector<IVec>>> level_offsets(
    const SubstitutionSystem& sys, const std::vector<int>& x, int k,
    const ControlPointTable& cp, const ChoiceFunction& c);

// Embedded per-level geometry shared by the twisted-integral and
// decomposition machinery; deformations produce an alternative instance with
// the same combinatorics and different reals.
struct GeomTables {
  const SubstitutionSystem* sys = nullptr;
  std::vector<int> x;  // letters x_1..x_n, bottom-up
  int n = 0;
  bool deformed = false;
  // offsets[m][parent][digit index] for m = 1..n ([0] unused): embedded
  // corner-relative placement of each child supertile.
  std::vector<std::vector<std::vector<Eigen::VectorXd>>> offsets;
  // bbox per level 0..n, per type.
  std::vector<std::vector<Eigen::VectorXd>> bbox_lo, bbox_hi;
  std::vector<double> widths;   // d=1 tile widths (deformed when applicable)
  Eigen::VectorXd axis_scale;   // d=2 per-axis cell scaling (ones undeformed)
  std::vector<double> theta_prod;  // undeformed theta_bar_{(m)}, m = 0..n

  int dim() const { return sys->dim(); }
};

GeomTables build_geom(const SubstitutionSystem& sys, const std::vector<int>& x, int n);

// Recompute bbox tables from offsets/widths (used after deformation).
void rebuild_bboxes(GeomTables& g);

// Real-coordinate tile list of a canonical supertile in geometry g; memoized
// by the caller-held cache.
struct RealTile {
  int type;
  Eigen::VectorXd pos;
};
class PatchCache {
 public:
  explicit PatchCache(const GeomTables& g) : g_(&g) {}
  const std::vector<RealTile>& patch(int level, int type);

 private:
  const GeomTables* g_;
  std::map<std::pair<int, int>, std::vector<RealTile>> memo_;
};

struct SupertilePlacement {
  int level;
  int type;
  Eigen::VectorXd position;  // corner position
};

struct SupertileDecomposition {
  std::vector<SupertilePlacement> pieces;  // fully-inside supertiles, mixed levels
  std::vector<RealTile> remainder;         // level-0 tiles from partially covered nodes
  std::map<std::pair<int, int>, long long> kappa;  // (level, type) -> count
  long long total_tiles = 0;               // level-0 tiles covered in total
};

// Greedy top-down hierarchical decomposition of the largest patch of the
// level-n supertile (type top_type, corner at shift) contained in the region.
SupertileDecomposition supertile_decomposition(const GeomTables& g, int top_type,
                                               const Eigen::VectorXd& shift,
                                               const Region& r, PatchCache& cache);

// Number of level-0 tiles in a level-k supertile of each type: h = F_{x_k}...F_{x_1} * 1.
std::vector<std::vector<long long>> height_vectors(const SubstitutionSystem& sys,
                                                   const std::vector<int>& x, int n);

}  // namespace tc
