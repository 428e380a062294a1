#pragma once

#include "tilecocycle/cocycles.hpp"
#include "tilecocycle/returns.hpp"

namespace tc {

// Shape deformation: new embeddings of the group generators. Supported modes:
//  - Lengths (d=1): new tile-length vector;
//  - GlobalLinear (d=2): diagonal linear map on coordinates (diagonal so that
//    clipped cell integrals stay axis-aligned closed forms);
//  - Raw: d x rank matrix on the return-group generators; tile lengths must
//    have addresses in the group.
struct DeformationParameter {
  enum class Mode { Lengths, GlobalLinear, Raw };
  Mode mode = Mode::Lengths;
  std::vector<double> lengths;  // Lengths mode, one per prototile, > 0
  Eigen::VectorXd diag;         // GlobalLinear mode
  Eigen::MatrixXd v_d;          // Raw mode, d x rank
};

struct AsymptoticCycle {
  Eigen::MatrixXd c;  // d x d
  double det = 0;
  bool invertible = false;
};

// Frequency-weighted average of the deformed local linear data; the
// deformation is admissible only when this is invertible.
AsymptoticCycle asymptotic_cycle(const SubstitutionSystem& sys, const std::vector<int>& x,
                                 const DeformationParameter& d,
                                 const ReturnGroup* group = nullptr);

// Deformed geometry tables over the first n letters of x: same combinatorics,
// re-embedded offsets. Throws when the asymptotic cycle is degenerate or (Raw
// mode) a tile length has no address in the group.
GeomTables apply_deformation(const SubstitutionSystem& sys, const std::vector<int>& x,
                             int n, const DeformationParameter& d,
                             const ReturnGroup* group = nullptr);

// Level-1 Fourier matrix of rule x_1 in the deformed geometry (the deformed
// tables feed the same spectral pipeline for every level).
Eigen::MatrixXcd deformed_fourier(const GeomTables& deformed, const Eigen::VectorXd& lambda);

// Composition-lattice return data for d=1 Veech transport: the tile-count
// lattice Z^M with V = row of tile lengths and per-rule transport F_l^T.
std::vector<ZMat> composition_g(const SubstitutionSystem& sys);
Eigen::VectorXd composition_v0(const std::vector<double>& lengths, double lambda);

}  // namespace tc
