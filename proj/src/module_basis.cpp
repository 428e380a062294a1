#include "tilecocycle/module_basis.hpp"

#include <cmath>
#include <stdexcept>

namespace tc {

Eigen::VectorXd ModuleBasis::embed(const IVec& v) const {
  if (v.size() != rank_b) throw std::invalid_argument("embed: coordinate length != module rank");
  return embedding * v.cast<double>();
}

void ModuleBasis::validate(double tol) const {
  if (dim_d != 1 && dim_d != 2) throw std::invalid_argument("module: dim must be 1 or 2");
  if (embedding.rows() != dim_d || embedding.cols() != rank_b)
    throw std::invalid_argument("module: embedding shape mismatch");
  if (static_cast<int>(mult_tables.size()) != theta_bar.size())
    throw std::invalid_argument("module: one mult table per rule required");
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(embedding);
  if (svd.rank() < dim_d) throw std::invalid_argument("module: embedding does not span R^d");
  for (size_t l = 0; l < mult_tables.size(); ++l) {
    if (theta_bar(l) <= 1.0) throw std::invalid_argument("module: expansion must exceed 1");
    const IMat& m = mult_tables[l];
    if (m.rows() != rank_b || m.cols() != rank_b)
      throw std::invalid_argument("module: mult table shape mismatch");
    for (int c = 0; c < rank_b; ++c) {
      IVec e = IVec::Zero(rank_b);
      e(c) = 1;
      const Eigen::VectorXd lhs = embed(m * e);
      const Eigen::VectorXd rhs = theta_bar(l) * embed(e);
      const double scale = 1.0 + rhs.lpNorm<Eigen::Infinity>();
      if ((lhs - rhs).lpNorm<Eigen::Infinity>() > tol * scale)
        throw std::invalid_argument("module: mult table inconsistent with expansion value");
    }
  }
}

double refine_root(const std::vector<long long>& coeffs, double approx) {
  auto eval = [&](double x) {
    double acc = 0.0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + static_cast<double>(*it);
    return acc;
  };
  double lo = approx, hi = approx;
  double step = std::max(1e-6, 1e-6 * std::abs(approx));
  while (eval(lo) * eval(hi) > 0.0) {
    lo -= step;
    hi += step;
    step *= 2.0;
    if (step > 1e6) throw std::invalid_argument("refine_root: no sign change near approximation");
  }
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    if (eval(lo) * eval(mid) <= 0.0)
      hi = mid;
    else
      lo = mid;
  }
  return 0.5 * (lo + hi);
}

ModuleBasis integer_module(int dim, const std::vector<long long>& theta_per_rule) {
  ModuleBasis b;
  b.dim_d = dim;
  b.rank_b = dim;
  b.embedding = Eigen::MatrixXd::Identity(dim, dim);
  b.theta_bar.resize(static_cast<Eigen::Index>(theta_per_rule.size()));
  for (size_t l = 0; l < theta_per_rule.size(); ++l) {
    b.mult_tables.push_back(theta_per_rule[l] * IMat::Identity(dim, dim));
    b.theta_bar(static_cast<Eigen::Index>(l)) = static_cast<double>(theta_per_rule[l]);
  }
  return b;
}

}  // namespace tc
