#include "tilecocycle/geometry.hpp"

#include "tilecocycle/substitution.hpp"

#include <limits>

namespace tc {

namespace {
constexpr double kEps = 1e-12;
}

void tile_bbox(const SubstitutionSystem& sys, const PlacedTile& t,
               Eigen::VectorXd& bb_lo, Eigen::VectorXd& bb_hi) {
  const Eigen::VectorXd pos = sys.basis.embed(t.translation);
  if (sys.dim() == 1) {
    bb_lo = pos;
    bb_hi = pos;
    bb_hi(0) += sys.tile_width(t.label);
    return;
  }
  bb_lo = Eigen::VectorXd::Constant(2, std::numeric_limits<double>::infinity());
  bb_hi = Eigen::VectorXd::Constant(2, -std::numeric_limits<double>::infinity());
  for (const auto& c : sys.prototiles[t.label].cells) {
    for (int a = 0; a < 2; ++a) {
      bb_lo(a) = std::min(bb_lo(a), pos(a) + c(a));
      bb_hi(a) = std::max(bb_hi(a), pos(a) + c(a) + 1.0);
    }
  }
}

Patch region_clip(const SubstitutionSystem& sys, const Patch& p, const Region& r) {
  Patch out;
  Eigen::VectorXd lo, hi;
  for (const auto& t : p.tiles) {
    tile_bbox(sys, t, lo, hi);
    bool inside = true;
    for (int a = 0; a < sys.dim(); ++a)
      if (lo(a) < r.lo(a) - kEps || hi(a) > r.hi(a) + kEps) inside = false;
    if (inside) out.tiles.push_back(t);
  }
  return out;
}

}  // namespace tc
