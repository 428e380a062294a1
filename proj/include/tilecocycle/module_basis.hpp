#pragma once

// Translation data lives in a finitely generated Z-module embedded in R^d.
// All combinatorial algebra (offsets, return vectors, addresses) happens on
// integer coordinate tuples; floats appear only when embedding.

#include <Eigen/Dense>

#include <string>
#include <vector>

namespace tc {

using IVec = Eigen::Matrix<long long, Eigen::Dynamic, 1>;
using IMat = Eigen::Matrix<long long, Eigen::Dynamic, Eigen::Dynamic>;

struct ModuleBasis {
  int dim_d = 1;   // spatial dimension (1 or 2)
  int rank_b = 1;  // module rank
  Eigen::MatrixXd embedding;       // dim_d x rank_b, basis vectors as columns
  std::vector<IMat> mult_tables;   // per rule: rank_b x rank_b, action of the expansion
  Eigen::VectorXd theta_bar;       // per rule: real expansion value > 1

  Eigen::VectorXd embed(const IVec& v) const;

  // Throws std::invalid_argument when the multiplication tables do not
  // realize the stated expansions, or the embedding does not span R^d.
  void validate(double tol = 1e-12) const;
};

// Refines an approximate root of the integer polynomial sum_i coeffs[i] x^i
// by bisection down to ~1e-15 relative accuracy. The bracket is grown from
// the approximation until a sign change is found.
double refine_root(const std::vector<long long>& coeffs, double approx);

ModuleBasis integer_module(int dim, const std::vector<long long>& theta_per_rule);

}  // namespace tc
