#pragma once

#include "tilecocycle/module_basis.hpp"

#include <vector>

namespace tc {

// Tile geometry: an interval length (d=1, exact module vector along the one
// axis) or a finite set of integer unit cells (d=2 block tiles).
struct Prototile {
  int label = 0;
  IVec length;                          // d=1 only
  std::vector<Eigen::Vector2i> cells;   // d=2 only, unit-cell corners
  IVec anchor;                          // control point, module coords
};

struct PlacedTile {
  int label;
  IVec translation;
};

struct Patch {
  std::vector<PlacedTile> tiles;
};

// Axis-aligned box C_R(c): sup-norm ball of radius R around the center.
struct Region {
  Eigen::VectorXd center;
  double halfwidth = 0.0;

  double lo(int axis) const { return center(axis) - halfwidth; }
  double hi(int axis) const { return center(axis) + halfwidth; }
};

struct SubstitutionSystem;

// Tiles of p whose closed geometry lies inside r (the O^- patch of the box).
Patch region_clip(const SubstitutionSystem& sys, const Patch& p, const Region& r);

// Closed tile bounding box in embedded coordinates.
void tile_bbox(const SubstitutionSystem& sys, const PlacedTile& t,
               Eigen::VectorXd& bb_lo, Eigen::VectorXd& bb_hi);

}  // namespace tc
