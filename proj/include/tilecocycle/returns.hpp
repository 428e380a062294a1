#pragma once

#include "tilecocycle/exact.hpp"
#include "tilecocycle/hierarchy.hpp"

#include <vector>

namespace tc {

struct ReturnVector {
  IVec tau;        // exact module coordinates, nonzero
  int tile_type;   // the type whose pair of occurrences realized it
  int level;       // witnessing supertile level
};

struct ReturnVectorSet {
  std::vector<ReturnVector> vectors;
  bool complete = true;  // false when the horizon was exhausted before R
};

// All differences of same-type tile positions within canonical level-k
// supertiles (k <= k_max), filtered to sup-norm <= R, deduplicated exactly.
ReturnVectorSet enumerate_return_vectors(const SubstitutionSystem& sys,
                                         const std::vector<int>& x, int k_max, double R);

struct ReturnGroup {
  Index rank = 0;
  ZMat v_coords;            // rank_b x rank, HNF canonical basis columns
  Eigen::MatrixXd v_real;   // d x rank embedding of the generators
};

ReturnGroup group_basis(const SubstitutionSystem& sys, const ReturnVectorSet& vectors);

// Unique alpha with V * alpha = tau; throws when tau is outside the group.
std::vector<BigInt> address(const ReturnGroup& group, const IVec& tau);

// Integer G solving Mtheta_l * V = V' * G exactly; throws when the inclusion
// theta_l * Gamma_x <= Gamma_shift fails.
ZMat g_matrix(const SubstitutionSystem& sys, int l, const ReturnGroup& at_x,
              const ReturnGroup& at_shift);

struct PostalResult {
  bool postal = false;
  std::vector<BigInt> divisors;  // elementary divisors of the pooled address matrix
  Index rank = 0;
};

// Collect same-type return vectors inside every canonical supertile built from
// the letters of w_plus, pool their addresses, and test via Smith normal form
// whether they generate all of Z^rank.
PostalResult postal_check(const SubstitutionSystem& sys, const std::vector<int>& w_plus,
                          const ReturnGroup& group);

}  // namespace tc
