#include "tilecocycle/twisted.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace tc {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kEps = 1e-12;

Cplx unit_phase(double t) { return {std::cos(kTwoPi * t), -std::sin(kTwoPi * t)}; }

// int_a^b exp(-2 pi i l t) dt.
Cplx interval_integral(double l, double a, double b) {
  if (b <= a) return {0.0, 0.0};
  if (std::abs(l) < 1e-14) return {b - a, 0.0};
  const Cplx ea = unit_phase(l * a), eb = unit_phase(l * b);
  return (ea - eb) / Cplx(0.0, kTwoPi * l);
}

Cplx clipped_tile_integral(const GeomTables& g, int type, const Eigen::VectorXd& pos,
                           const Region& r, const Eigen::VectorXd& lambda) {
  if (g.dim() == 1) {
    const double a = std::max(pos(0), r.lo(0));
    const double b = std::min(pos(0) + g.widths[type], r.hi(0));
    return interval_integral(lambda(0), a, b);
  }
  Cplx acc{0.0, 0.0};
  for (const auto& c : g.sys->prototiles[type].cells) {
    Cplx cell{1.0, 0.0};
    for (int ax = 0; ax < 2; ++ax) {
      const double a = std::max(pos(ax) + c(ax) * g.axis_scale(ax), r.lo(ax));
      const double b = std::min(pos(ax) + (c(ax) + 1.0) * g.axis_scale(ax), r.hi(ax));
      cell *= interval_integral(lambda(ax), a, b);
    }
    acc += cell;
  }
  return acc;
}

enum class Box { Inside, Outside, Partial };

Box classify(const Eigen::VectorXd& lo, const Eigen::VectorXd& hi, const Region& r) {
  bool inside = true, outside = false;
  for (int a = 0; a < lo.size(); ++a) {
    if (lo(a) < r.lo(a) - kEps || hi(a) > r.hi(a) + kEps) inside = false;
    if (hi(a) <= r.lo(a) + kEps || lo(a) >= r.hi(a) - kEps) outside = true;
  }
  if (inside) return Box::Inside;
  if (outside) return Box::Outside;
  return Box::Partial;
}

bool point_in_region(const Eigen::VectorXd& p, const Region& r) {
  // Half-open towards the upper faces so boundary points are counted once.
  for (int a = 0; a < p.size(); ++a)
    if (p(a) < r.lo(a) - kEps || p(a) >= r.hi(a) - kEps) return false;
  return true;
}

Cplx tile_weight(const TLCProfile& prof, size_t tile_index) {
  if (prof.kind == TLCProfile::Kind::Step) return prof.tile_weights.at(tile_index);
  return prof.weight;
}

struct RegionEval {
  const GeomTables* g;
  PatchCache* cache;
  const TLCFunction* f;
  Eigen::VectorXd lambda;
  Region region;
  bool cocycle = false;
  std::vector<Eigen::MatrixXcd> partials;  // [level] for level >= f->level
  std::vector<Cplx> psi;                   // per type

  Cplx level_y_node(int type, const Eigen::VectorXd& pos) const {
    const auto& tiles = cache->patch(f->level, type);
    const TLCProfile& prof = f->per_type[type];
    Cplx acc{0.0, 0.0};
    for (size_t t = 0; t < tiles.size(); ++t) {
      const Eigen::VectorXd p = pos + tiles[t].pos;
      const Cplx w = tile_weight(prof, t);
      if (prof.kind == TLCProfile::Kind::Dirac) {
        if (point_in_region(p, region)) acc += w * unit_phase(lambda.dot(p));
      } else {
        acc += w * clipped_tile_integral(*g, tiles[t].type, p, region, lambda);
      }
    }
    return acc;
  }

  Cplx eval(int level, int type, const Eigen::VectorXd& pos) const {
    const Eigen::VectorXd lo = pos + g->bbox_lo[level][type];
    const Eigen::VectorXd hi = pos + g->bbox_hi[level][type];
    const Box c = classify(lo, hi, region);
    if (c == Box::Outside) return {0.0, 0.0};
    if (cocycle && c == Box::Inside && level >= f->level) {
      Cplx acc{0.0, 0.0};
      for (int l = 0; l < g->sys->num_types(); ++l)
        acc += partials[level](type, l) * psi[l];
      return unit_phase(lambda.dot(pos)) * acc;
    }
    if (level == f->level) return level_y_node(type, pos);
    if (level < f->level)
      throw std::logic_error("twisted region: node below the TLC level");
    const int rule = g->x[level - 1];
    const auto& digs = g->sys->rules[rule].digits[type];
    Cplx acc{0.0, 0.0};
    for (size_t e = 0; e < digs.size(); ++e)
      acc += eval(level - 1, digs[e].child, pos + g->offsets[level][type][e]);
    return acc;
  }
};

}  // namespace

TLCFunction TLCFunction::indicator(int types, Cplx weight) {
  TLCFunction f;
  f.level = 0;
  f.per_type.assign(types, TLCProfile{TLCProfile::Kind::Indicator, weight, {}});
  return f;
}

TLCFunction TLCFunction::dirac(int types, Cplx weight) {
  TLCFunction f;
  f.level = 0;
  f.per_type.assign(types, TLCProfile{TLCProfile::Kind::Dirac, weight, {}});
  return f;
}

Cplx tile_transform(const GeomTables& g, int type, const Eigen::VectorXd& lambda) {
  if (g.dim() == 1) return interval_integral(lambda(0), 0.0, g.widths[type]);
  Cplx acc{0.0, 0.0};
  for (const auto& c : g.sys->prototiles[type].cells) {
    Cplx cell{1.0, 0.0};
    for (int ax = 0; ax < 2; ++ax)
      cell *= interval_integral(lambda(ax), c(ax) * g.axis_scale(ax),
                                (c(ax) + 1.0) * g.axis_scale(ax));
    acc += cell;
  }
  return acc;
}

Cplx profile_transform(const GeomTables& g, PatchCache& cache, const TLCFunction& f,
                       int type, const Eigen::VectorXd& lambda) {
  const auto& tiles = cache.patch(f.level, type);
  const TLCProfile& prof = f.per_type[type];
  Cplx acc{0.0, 0.0};
  for (size_t t = 0; t < tiles.size(); ++t) {
    const Cplx w = tile_weight(prof, t);
    const Cplx ph = unit_phase(lambda.dot(tiles[t].pos));
    if (prof.kind == TLCProfile::Kind::Dirac)
      acc += w * ph;
    else
      acc += w * ph * tile_transform(g, tiles[t].type, lambda);
  }
  return acc;
}

Cplx twisted_integral_supertile(const GeomTables& g, PatchCache& cache, int k, int j,
                                const Eigen::VectorXd& lambda, const TLCFunction& f) {
  const Eigen::MatrixXcd m = spectral_partial(g, f.level, k, lambda);
  Cplx acc{0.0, 0.0};
  for (int l = 0; l < g.sys->num_types(); ++l)
    acc += m(j, l) * profile_transform(g, cache, f, l, lambda);
  return acc;
}

Cplx twisted_integral_region(const GeomTables& g, PatchCache& cache, int top_type,
                             const Eigen::VectorXd& shift, const TLCFunction& f,
                             const Eigen::VectorXd& lambda, const Region& r,
                             TwistedMethod method) {
  RegionEval ev;
  ev.g = &g;
  ev.cache = &cache;
  ev.f = &f;
  ev.lambda = lambda;
  ev.region = r;
  ev.cocycle = (method == TwistedMethod::Cocycle);
  if (ev.cocycle) {
    const int m = g.sys->num_types();
    ev.partials.assign(g.n + 1, Eigen::MatrixXcd());
    Eigen::MatrixXcd run = Eigen::MatrixXcd::Identity(m, m);
    ev.partials[f.level] = run;
    for (int level = f.level + 1; level <= g.n; ++level) {
      run = level_factor(g, level, lambda) * run;
      ev.partials[level] = run;
    }
    for (int l = 0; l < g.sys->num_types(); ++l)
      ev.psi.push_back(profile_transform(g, cache, f, l, lambda));
  }
  return ev.eval(g.n, top_type, shift);
}

GrowthFit growth_fit(const TwistedIntegralSeries& series, int dim) {
  const size_t n = series.radii.size();
  if (n < 8) throw std::invalid_argument("growth_fit: at least 8 grid points required");
  const double rmax = *std::max_element(series.radii.begin(), series.radii.end());
  const double rmin = *std::min_element(series.radii.begin(), series.radii.end());
  if (rmax / rmin < std::pow(10.0, 1.5))
    throw std::invalid_argument("growth_fit: grid must span at least 1.5 decades");
  std::vector<double> xs, ys;
  for (size_t i = 0; i < n; ++i) {
    if (series.radii[i] < rmax / 10.0) continue;
    xs.push_back(std::log(series.radii[i]));
    ys.push_back(std::log(std::max(1e-300, std::abs(series.values[i]))));
  }
  GrowthFit fit;
  fit.points_used = static_cast<int>(xs.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  const double m = xs.size();
  fit.slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  const double icpt = (sy - fit.slope * sx) / m;
  double rss = 0;
  for (size_t i = 0; i < xs.size(); ++i) {
    const double e = ys[i] - (icpt + fit.slope * xs[i]);
    rss += e * e;
  }
  fit.residual = std::sqrt(rss / m);
  fit.alpha_hat = dim - fit.slope;
  return fit;
}

int covering_level(const GeomTables& g, double R) {
  for (int n = 0; n <= g.n; ++n) {
    bool covers = true;
    for (int t = 0; t < g.sys->num_types(); ++t)
      for (int a = 0; a < g.dim(); ++a)
        if ((g.bbox_hi[n][t](a) - g.bbox_lo[n][t](a)) / 2.0 < R) covers = false;
    if (covers) return n;
  }
  throw std::invalid_argument("covering_level: geometry horizon too short for R");
}

Eigen::VectorXd centering_shift(const GeomTables& g, int level, int type) {
  return -(g.bbox_lo[level][type] + g.bbox_hi[level][type]) / 2.0;
}

VeechDensitySeries veech_density(const std::vector<int>& letters,
                                 const std::vector<long long>& returns,
                                 const std::vector<ZMat>& g_per_rule,
                                 const Eigen::VectorXd& v0, double rho) {
  VeechDensitySeries out;
  Eigen::VectorXd u = v0;
  const Eigen::Index r = u.size();
  auto mod1 = [&] { for (Eigen::Index i = 0; i < r; ++i) u(i) -= std::floor(u(i)); };
  mod1();
  long long hits = 0;
  size_t idx = 0;
  const long long kmax = returns.empty() ? -1 : returns.back();
  for (long long m = 0; m <= kmax; ++m) {
    if (m > 0) {
      const ZMat& gm = g_per_rule[letters[static_cast<size_t>(m - 1)]];
      Eigen::VectorXd nu = Eigen::VectorXd::Zero(r);
      for (Eigen::Index i = 0; i < r; ++i)
        for (Eigen::Index j = 0; j < r; ++j)
          nu(i) += gm(j, i).convert_to<double>() * u(j);
      u = nu;
      mod1();
    }
    if (idx < returns.size() && returns[idx] == m) {
      double dist = 0;
      for (Eigen::Index i = 0; i < r; ++i) dist = std::max(dist, std::min(u(i), 1.0 - u(i)));
      const int ind = (dist <= rho) ? 1 : 0;
      hits += ind;
      out.k_j.push_back(m);
      out.dist.push_back(dist);
      out.indicator.push_back(ind);
      out.d_n.push_back(static_cast<double>(hits) / static_cast<double>(out.k_j.size()));
      ++idx;
    }
  }
  return out;
}

VeechDensitySeries veech_density_exact(const std::vector<int>& letters,
                                       const std::vector<long long>& returns,
                                       const std::vector<ZMat>& g_per_rule,
                                       const std::vector<BigRational>& v0,
                                       const BigRational& rho) {
  VeechDensitySeries out;
  std::vector<BigRational> u = v0;
  const size_t r = u.size();
  auto mod1 = [&] {
    for (auto& c : u) {
      BigInt q = numerator(c) / denominator(c);
      if (numerator(c) < 0 && numerator(c) % denominator(c) != 0) q -= 1;
      c -= BigRational(q);
    }
  };
  mod1();
  long long hits = 0;
  size_t idx = 0;
  const long long kmax = returns.empty() ? -1 : returns.back();
  for (long long m = 0; m <= kmax; ++m) {
    if (m > 0) {
      const ZMat& gm = g_per_rule[letters[static_cast<size_t>(m - 1)]];
      std::vector<BigRational> nu(r);
      for (size_t i = 0; i < r; ++i)
        for (size_t j = 0; j < r; ++j)
          nu[i] += BigRational(gm(static_cast<Index>(j), static_cast<Index>(i))) * u[j];
      u = std::move(nu);
      mod1();
    }
    if (idx < returns.size() && returns[idx] == m) {
      BigRational dist = 0;
      for (const auto& c : u) {
        const BigRational d = std::min(c, BigRational(1) - c);
        if (d > dist) dist = d;
      }
      const int ind = (dist <= rho) ? 1 : 0;
      hits += ind;
      out.k_j.push_back(m);
      out.dist.push_back(dist.convert_to<double>());
      out.indicator.push_back(ind);
      out.d_n.push_back(static_cast<double>(hits) / static_cast<double>(out.k_j.size()));
      ++idx;
    }
  }
  return out;
}

namespace {

// Samples a uniformly random level-0 tile position inside a level-n supertile
// via height-proportional digit probabilities.
Eigen::VectorXd sample_tile_position(const GeomTables& g, int& top_type, std::mt19937_64& rng,
                                     const std::vector<std::vector<long long>>& h) {
  std::vector<double> topw;
  for (int t = 0; t < g.sys->num_types(); ++t)
    topw.push_back(static_cast<double>(h[g.n][t]));
  std::discrete_distribution<int> dtop(topw.begin(), topw.end());
  top_type = dtop(rng);
  int type = top_type;
  Eigen::VectorXd pos = Eigen::VectorXd::Zero(g.dim());
  for (int level = g.n; level >= 1; --level) {
    const int rule = g.x[level - 1];
    const auto& digs = g.sys->rules[rule].digits[type];
    std::vector<double> w;
    for (const auto& d : digs) w.push_back(static_cast<double>(h[level - 1][d.child]));
    std::discrete_distribution<int> dd(w.begin(), w.end());
    const int e = dd(rng);
    pos += g.offsets[level][type][static_cast<size_t>(e)];
    type = digs[static_cast<size_t>(e)].child;
  }
  return pos;
}

}  // namespace

SpectralBound spectral_bound(const GeomTables& g, const TLCFunction& f,
                             const Eigen::VectorXd& lambda, double r, int n_samples,
                             std::uint64_t seed) {
  if (r <= 0 || r >= 0.5) throw std::invalid_argument("spectral_bound: 0 < r < 1/2 required");
  SpectralBound out;
  out.r = r;
  // R = 1/(4r) keeps |2 pi w R| <= pi/2 for |w| <= r, so the Fejer-type kernel
  // constant below stays positive up to the endpoint.
  out.big_r = 1.0 / (4.0 * r);
  out.samples = n_samples;

  double c2 = std::numeric_limits<double>::infinity();
  for (int i = 1; i <= 1000; ++i) {
    const double w = r * i / 1000.0;
    const double s = std::sin(kTwoPi * w * out.big_r);
    c2 = std::min(c2, s * s / (std::numbers::pi * std::numbers::pi * w * w * out.big_r * out.big_r));
  }
  out.c2 = c2;

  const auto h = height_vectors(*g.sys, g.x, g.n);
  std::mt19937_64 rng(seed);
  PatchCache cache(g);
  double acc = 0;
  for (int s = 0; s < n_samples; ++s) {
    int top_type = 0;
    Eigen::VectorXd center = sample_tile_position(g, top_type, rng, h);
    // Clamp the window into the supertile.
    for (int a = 0; a < g.dim(); ++a) {
      const double lo = g.bbox_lo[g.n][top_type](a) + out.big_r;
      const double hi = g.bbox_hi[g.n][top_type](a) - out.big_r;
      if (lo > hi) throw std::invalid_argument("spectral_bound: horizon too short for R");
      center(a) = std::clamp(center(a), lo, hi);
    }
    Region reg{center, out.big_r};
    const Cplx v = twisted_integral_region(g, cache, top_type, Eigen::VectorXd::Zero(g.dim()),
                                           f, lambda, reg, TwistedMethod::Cocycle);
    acc += std::norm(v);
  }
  out.l2_estimate = acc / n_samples;
  out.bound = out.l2_estimate / std::pow(c2 * out.big_r * out.big_r, g.dim());
  return out;
}

Cplx point_eval(const GeomTables& g, int top_type, const Eigen::VectorXd& shift,
                const TLCFunction& f, PatchCache& cache, const Eigen::VectorXd& point) {
  int type = top_type;
  Eigen::VectorXd pos = shift;
  for (int level = g.n; level > f.level; --level) {
    const int rule = g.x[level - 1];
    const auto& digs = g.sys->rules[rule].digits[type];
    int found = -1;
    for (size_t e = 0; e < digs.size(); ++e) {
      const Eigen::VectorXd lo = pos + g.offsets[level][type][e] + g.bbox_lo[level - 1][digs[e].child];
      const Eigen::VectorXd hi = pos + g.offsets[level][type][e] + g.bbox_hi[level - 1][digs[e].child];
      bool in = true;
      for (int a = 0; a < g.dim(); ++a)
        if (point(a) < lo(a) || point(a) >= hi(a)) in = false;
      if (in) {
        found = static_cast<int>(e);
        break;
      }
    }
    if (found < 0) return {0.0, 0.0};
    pos += g.offsets[level][type][static_cast<size_t>(found)];
    type = digs[static_cast<size_t>(found)].child;
  }
  const TLCProfile& prof = f.per_type[type];
  if (prof.kind == TLCProfile::Kind::Dirac) return {0.0, 0.0};
  const auto& tiles = cache.patch(f.level, type);
  for (size_t t = 0; t < tiles.size(); ++t) {
    const Eigen::VectorXd lo = pos + tiles[t].pos + g.bbox_lo[0][tiles[t].type];
    const Eigen::VectorXd hi = pos + tiles[t].pos + g.bbox_hi[0][tiles[t].type];
    bool in = true;
    for (int a = 0; a < g.dim(); ++a)
      if (point(a) < lo(a) || point(a) >= hi(a)) in = false;
    if (in) return tile_weight(prof, t);
  }
  return {0.0, 0.0};
}

double correlation_integral(const GeomTables& g, const TLCFunction& f, double R,
                            int n_samples, std::uint64_t seed) {
  if (n_samples < 4) throw std::invalid_argument("correlation_integral: sample budget too small");
  std::mt19937_64 rng(seed);
  PatchCache cache(g);
  const int top = 0;
  const Eigen::VectorXd shift = Eigen::VectorXd::Zero(g.dim());
  // Inner sampling window: deep interior of the supertile.
  Eigen::VectorXd lo = g.bbox_lo[g.n][top], hi = g.bbox_hi[g.n][top];
  for (int a = 0; a < g.dim(); ++a) {
    const double margin = R + 1.0;
    lo(a) += margin;
    hi(a) -= margin;
    if (lo(a) >= hi(a)) throw std::invalid_argument("correlation_integral: horizon too short");
  }
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  auto sample_in = [&](const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
    Eigen::VectorXd p(g.dim());
    for (int ax = 0; ax < g.dim(); ++ax) p(ax) = a(ax) + (b(ax) - a(ax)) * u01(rng);
    return p;
  };
  const int n_inner = 64;
  double acc = 0;
  for (int s = 0; s < n_samples; ++s) {
    Eigen::VectorXd t(g.dim());
    for (int ax = 0; ax < g.dim(); ++ax) t(ax) = -R + 2.0 * R * u01(rng);
    Cplx c{0.0, 0.0};
    for (int i = 0; i < n_inner; ++i) {
      const Eigen::VectorXd p = sample_in(lo, hi);
      c += point_eval(g, top, shift, f, cache, p + t) *
           std::conj(point_eval(g, top, shift, f, cache, p));
    }
    acc += std::abs(c) / n_inner;
  }
  return acc / n_samples * std::pow(2.0 * R, g.dim());
}

}  // namespace tc
