#pragma once

#include "tilecocycle/exact.hpp"
#include "tilecocycle/hierarchy.hpp"
#include "tilecocycle/symbolic.hpp"

#include <complex>
#include <functional>

namespace tc {

// Theta^{(m,n)} = A_n ... A_{m+1}, A_k = F_{x_k}; exact integers.
ZMat trace_product(const SubstitutionSystem& sys, const std::vector<int>& x, int m, int n);

// Level-1 Fourier matrix of rule l: entry (i, j) = sum over children of type j
// in parent i of exp(-2 pi i <lambda, w_e>) with control-point-relative W offsets.
Eigen::MatrixXcd fourier_matrix(const SubstitutionSystem& sys, int l,
                                const Eigen::VectorXd& lambda);

struct SpectralProduct {
  Eigen::MatrixXcd mat;    // renormalized running product
  double log_scale = 0.0;  // accumulated log of sup-norms
  int k = 0;
  Eigen::VectorXd lambda;
  bool exact_integer = false;  // every factor collapsed to its substitution matrix
  ZMat exact;                  // valid when exact_integer

  Eigen::MatrixXcd dense() const { return std::exp(log_scale) * mat; }
};

// Single level-m factor built from the (possibly deformed) level offsets of
// the geometry tables, evaluated at the base parameter lambda.
Eigen::MatrixXcd level_factor(const GeomTables& g, int level, const Eigen::VectorXd& lambda);

// M^{(k)}(lambda) = M^{x_k}(theta_{(k-1)} lambda) ... M^{x_1}(lambda): the
// factor at level m carries the level-m offsets of the geometry tables, which
// is the same rescaling applied to deformed geometries uniformly.
SpectralProduct spectral_product(const GeomTables& g, int k, const Eigen::VectorXd& lambda);

// Partial product over levels y+1..k (identity when y = k); plain product
// without renormalization, safe for the desk-scale region levels.
Eigen::MatrixXcd spectral_partial(const GeomTables& g, int y, int k,
                                  const Eigen::VectorXd& lambda);

struct VertexWeights {
  std::vector<double> w;  // per type at the requested level
  double residual = 0.0;
  int depth = 0;
};

// Back-transported cylinder weights at level k, normalized so that
// sum_v h_k(v) w_k(v) = 1.
VertexWeights invariant_weights(const SubstitutionSystem& sys, const std::vector<int>& x,
                                int k, int depth);

struct LyapunovEstimate {
  std::vector<double> exponents;  // descending
  std::vector<double> stderrs;
  std::vector<bool> minus_inf;
  long long n = 0;
  std::string method;
};

// factor(k) returns the k-th matrix of the stream (k = 0-based).
LyapunovEstimate lyapunov_top(const std::function<Eigen::MatrixXd(long long)>& factor,
                              long long n_steps);

LyapunovEstimate lyapunov_spectrum(const std::function<Eigen::MatrixXd(long long)>& factor,
                                   long long n_steps);

}  // namespace tc
