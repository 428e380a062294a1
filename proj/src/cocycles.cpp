#include "tilecocycle/cocycles.hpp"

#include <cmath>
#include <numbers>

namespace tc {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double inf_norm(const Eigen::MatrixXd& m) { return m.cwiseAbs().rowwise().sum().maxCoeff(); }
double inf_norm(const Eigen::MatrixXcd& m) { return m.cwiseAbs().rowwise().sum().maxCoeff(); }

bool near_integer(double v) { return std::abs(v - std::round(v)) < 1e-9; }

}  // namespace

ZMat trace_product(const SubstitutionSystem& sys, const std::vector<int>& x, int m, int n) {
  if (m > n || n > static_cast<int>(x.size()))
    throw std::invalid_argument("trace_product: bad index range");
  ZMat prod = ZMat::identity(sys.num_types());
  for (int k = m + 1; k <= n; ++k) prod = to_zmat(substitution_matrix(sys, x[k - 1])) * prod;
  return prod;
}

Eigen::MatrixXcd fourier_matrix(const SubstitutionSystem& sys, int l,
                                const Eigen::VectorXd& lambda) {
  // W offsets under the default lexicographic choice (zero anchors, zero
  // chosen offset): the corner offsets themselves.
  const int m = sys.num_types();
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(m, m);
  for (int i = 0; i < m; ++i)
    for (const auto& dig : sys.rules[l].digits[i]) {
      const double phase = kTwoPi * lambda.dot(sys.basis.embed(dig.offset));
      out(i, dig.child) += std::complex<double>(std::cos(phase), -std::sin(phase));
    }
  return out;
}

Eigen::MatrixXcd level_factor(const GeomTables& g, int level, const Eigen::VectorXd& lambda) {
  const SubstitutionSystem& sys = *g.sys;
  const int m = sys.num_types();
  const int rule = g.x[level - 1];
  Eigen::MatrixXcd fac = Eigen::MatrixXcd::Zero(m, m);
  for (int i = 0; i < m; ++i) {
    const auto& digs = sys.rules[rule].digits[i];
    for (size_t e = 0; e < digs.size(); ++e) {
      const double a = kTwoPi * lambda.dot(g.offsets[level][i][e]);
      fac(i, digs[e].child) += std::complex<double>(std::cos(a), -std::sin(a));
    }
  }
  return fac;
}

SpectralProduct spectral_product(const GeomTables& g, int k, const Eigen::VectorXd& lambda) {
  if (k > g.n) throw std::invalid_argument("spectral_product: level exceeds geometry horizon");
  const SubstitutionSystem& sys = *g.sys;
  const int m = sys.num_types();
  SpectralProduct out;
  out.k = k;
  out.lambda = lambda;
  Eigen::MatrixXcd prod = Eigen::MatrixXcd::Identity(m, m);
  bool all_exact = true;
  for (int level = 1; level <= k; ++level) {
    for (int i = 0; i < m; ++i)
      for (const auto& off : g.offsets[level][i])
        if (!near_integer(lambda.dot(off))) all_exact = false;
    prod = level_factor(g, level, lambda) * prod;
    if (level % 16 == 0) {
      const double s = inf_norm(prod);
      if (s > 0) {
        prod /= s;
        out.log_scale += std::log(s);
      }
    }
  }
  out.mat = prod;
  if (all_exact) {
    out.exact_integer = true;
    out.exact = trace_product(sys, g.x, 0, k);
  }
  return out;
}

Eigen::MatrixXcd spectral_partial(const GeomTables& g, int y, int k,
                                  const Eigen::VectorXd& lambda) {
  if (y > k || k > g.n) throw std::invalid_argument("spectral_partial: bad levels");
  const SubstitutionSystem& sys = *g.sys;
  const int m = sys.num_types();
  Eigen::MatrixXcd prod = Eigen::MatrixXcd::Identity(m, m);
  for (int level = y + 1; level <= k; ++level) prod = level_factor(g, level, lambda) * prod;
  return prod;
}

VertexWeights invariant_weights(const SubstitutionSystem& sys, const std::vector<int>& x,
                                int k, int depth) {
  if (k + depth > static_cast<int>(x.size()))
    throw std::invalid_argument("invariant_weights: horizon");
  const int m = sys.num_types();
  auto transport = [&](int from_depth) {
    Eigen::VectorXd w = Eigen::VectorXd::Constant(m, 1.0);
    for (int level = k + from_depth; level > k; --level) {
      const Eigen::MatrixXi f = substitution_matrix(sys, x[level - 1]);
      w = (f.cast<double>().transpose() * w).eval();
      w /= w.sum();
    }
    // Normalize: total path mass sum_v h_k(v) w(v) = 1.
    const auto h = height_vectors(sys, x, k);
    double total = 0;
    for (int v = 0; v < m; ++v) total += static_cast<double>(h[k][v]) * w(v);
    w /= total;
    return w;
  };
  const Eigen::VectorXd full = transport(depth);
  const Eigen::VectorXd half = transport(std::max(1, depth / 2));
  VertexWeights out;
  out.w.assign(full.data(), full.data() + m);
  out.residual = (full - half).lpNorm<Eigen::Infinity>();
  out.depth = depth;
  return out;
}

namespace {

void batch_stats(const std::vector<double>& cum, long long n, double& est, double& se) {
  est = cum.back() / static_cast<double>(n);
  const int nb = 10;
  const long long len = n / nb;
  std::vector<double> slopes;
  for (int b = 0; b < nb && len > 0; ++b) {
    const long long s = b * len, e = std::min<long long>(n, (b + 1) * len);
    slopes.push_back((cum[e] - cum[s]) / static_cast<double>(e - s));
  }
  double mean = 0;
  for (double v : slopes) mean += v;
  mean /= slopes.size();
  double var = 0;
  for (double v : slopes) var += (v - mean) * (v - mean);
  var /= std::max<size_t>(1, slopes.size() - 1);
  se = std::sqrt(var / slopes.size());
}

}  // namespace

LyapunovEstimate lyapunov_top(const std::function<Eigen::MatrixXd(long long)>& factor,
                              long long n_steps) {
  if (n_steps < 100) throw std::invalid_argument("lyapunov_top: n_steps >= 100 required");
  Eigen::MatrixXd p;
  std::vector<double> cum{0.0};
  for (long long k = 0; k < n_steps; ++k) {
    const Eigen::MatrixXd f = factor(k);
    p = (k == 0) ? f : Eigen::MatrixXd(f * p);
    const double s = inf_norm(p);
    if (s <= 0) throw std::runtime_error("lyapunov_top: degenerate (zero) product");
    cum.push_back(cum.back() + std::log(s));
    p /= s;
  }
  LyapunovEstimate out;
  out.method = "top-only";
  out.n = n_steps;
  double est, se;
  batch_stats(cum, n_steps, est, se);
  out.exponents = {est};
  out.stderrs = {se};
  out.minus_inf = {false};
  return out;
}

LyapunovEstimate lyapunov_spectrum(const std::function<Eigen::MatrixXd(long long)>& factor,
                                   long long n_steps) {
  if (n_steps < 100) throw std::invalid_argument("lyapunov_spectrum: n_steps >= 100 required");
  const Eigen::MatrixXd f0 = factor(0);
  const int r = static_cast<int>(f0.rows());
  if (f0.cols() != r) throw std::invalid_argument("lyapunov_spectrum: square matrices required");
  Eigen::MatrixXd q = Eigen::MatrixXd::Identity(r, r);
  std::vector<std::vector<double>> cum(r, std::vector<double>{0.0});
  std::vector<bool> collapsed(r, false);
  const double kFloor = 1e-300;
  for (long long k = 0; k < n_steps; ++k) {
    const Eigen::MatrixXd b = factor(k) * q;
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(b);
    Eigen::MatrixXd qq = qr.householderQ() * Eigen::MatrixXd::Identity(r, r);
    const Eigen::MatrixXd rr = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int i = 0; i < r; ++i) {
      double d = std::abs(rr(i, i));
      if (d < kFloor) {
        d = kFloor;
        collapsed[i] = true;
      }
      cum[i].push_back(cum[i].back() + std::log(d));
      if (rr(i, i) < 0) qq.col(i) = -qq.col(i);
    }
    q = qq;
  }
  LyapunovEstimate out;
  out.method = "full-spectrum-QR";
  out.n = n_steps;
  std::vector<std::tuple<double, double, bool>> rows;
  for (int i = 0; i < r; ++i) {
    double est, se;
    batch_stats(cum[i], n_steps, est, se);
    rows.emplace_back(est, se, collapsed[i]);
  }
  std::sort(rows.begin(), rows.end(),
            [](const auto& a, const auto& b) { return std::get<0>(a) > std::get<0>(b); });
  for (const auto& [est, se, flag] : rows) {
    out.exponents.push_back(est);
    out.stderrs.push_back(se);
    out.minus_inf.push_back(flag);
  }
  return out;
}

}  // namespace tc
