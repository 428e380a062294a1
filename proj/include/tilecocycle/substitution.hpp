#pragma once

#include "tilecocycle/geometry.hpp"
#include "tilecocycle/module_basis.hpp"

#include <string>
#include <vector>

namespace tc {

// One digit map: child prototile placed at a corner-relative offset inside the
// inflated parent. Offsets live in module coordinates.
struct Digit {
  int child = 0;
  IVec offset;
};

struct SubstitutionRule {
  int theta_index = 0;                     // index into ModuleBasis tables
  std::vector<std::vector<Digit>> digits;  // per parent label
};

struct SubstitutionSystem {
  ModuleBasis basis;
  std::vector<Prototile> prototiles;
  std::vector<SubstitutionRule> rules;

  int dim() const { return basis.dim_d; }
  int num_types() const { return static_cast<int>(prototiles.size()); }
  int num_rules() const { return static_cast<int>(rules.size()); }
  double theta(int rule) const { return basis.theta_bar(rules[rule].theta_index); }
  const IMat& mtheta(int rule) const { return basis.mult_tables[rules[rule].theta_index]; }

  // d=1 tile width; d=2 tiles have unit cells, volume = cell count.
  double tile_width(int type) const;
  double tile_volume(int type) const;
};

struct ValidationCheck {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct ValidationReport {
  std::vector<ValidationCheck> checks;
  int primitivity_window = -1;  // -1 when not found within n_max
  bool ok() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
};

// Runs every check and reports all results; never aborts mid-report.
// support_letters: the rule indices realizable under the configured sampler.
ValidationReport validate_system(const SubstitutionSystem& sys,
                                 const std::vector<int>& support_letters,
                                 int n_max = 8);

// F[i][j] = number of children of label j under parent i for rule l.
Eigen::MatrixXi substitution_matrix(const SubstitutionSystem& sys, int l);

// Single-step inflation: each tile (j, t) is replaced by the digits of parent
// j translated by Mtheta_l * t.
Patch inflate(const SubstitutionSystem& sys, int l, const Patch& p);

}  // namespace tc
