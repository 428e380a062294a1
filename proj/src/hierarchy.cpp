#include "tilecocycle/hierarchy.hpp"

#include <limits>
#include <stdexcept>

namespace tc {

namespace {
constexpr double kEps = 1e-12;
}

ChoiceFunction ChoiceFunction::lexicographic(const SubstitutionSystem& sys) {
  ChoiceFunction c;
  c.chosen.assign(sys.num_rules(), std::vector<int>(sys.num_types(), 0));
  return c;
}

ControlPointTable control_points(const SubstitutionSystem& sys,
                                 const std::vector<int>& minus_tail,
                                 const ChoiceFunction& c, double tol) {
  if (minus_tail.empty()) throw std::invalid_argument("control_points: empty tail");
  for (int l = 0; l < sys.num_rules(); ++l)
    if (sys.theta(l) <= 1.0) throw std::invalid_argument("control_points: non-contracting rule");

  ControlPointTable out;
  const int d = sys.dim();
  double diam = 0;
  for (int i = 0; i < sys.num_types(); ++i) {
    Eigen::VectorXd lo, hi;
    tile_bbox(sys, {i, IVec::Zero(sys.basis.rank_b)}, lo, hi);
    diam = std::max(diam, (hi - lo).lpNorm<Eigen::Infinity>());
  }

  out.exact = true;
  const int depth_max = 400;
  for (int i = 0; i < sys.num_types(); ++i) {
    Eigen::VectorXd acc = Eigen::VectorXd::Zero(d);
    double prod = 1.0;
    int j = i;
    int m = 0;
    for (; m < depth_max; ++m) {
      const int rule = minus_tail[m % minus_tail.size()];
      const int e = c.chosen[rule][j];
      const auto& dig = sys.rules[rule].digits[j][e];
      prod *= sys.theta(rule);
      acc += sys.basis.embed(dig.offset) / prod;
      if (!dig.offset.isZero()) out.exact = false;
      j = dig.child;
      if (diam / prod < tol) break;
    }
    out.depth = std::max(out.depth, m + 1);
    out.residual = std::max(out.residual, diam / prod);
    out.anchor_real.push_back(acc);
    out.anchor.push_back(IVec::Zero(sys.basis.rank_b));

    // Boundary detection: the tile is half-open towards its upper faces, so an
    // anchor landing there belongs to a neighboring tile.
    Eigen::VectorXd lo, hi;
    tile_bbox(sys, {i, IVec::Zero(sys.basis.rank_b)}, lo, hi);
    bool bd = false;
    for (int a = 0; a < d; ++a)
      if (acc(a) >= hi(a) - 1e-9) bd = true;
    out.boundary.push_back(bd);
  }
  if (!out.exact)
    out.anchor.clear();  // exact coordinates unavailable for nonzero anchors
  return out;
}

std::vector<IMat> scale_matrices(const SubstitutionSystem& sys,
                                 const std::vector<int>& x, int n) {
  if (static_cast<int>(x.size()) < n) throw std::invalid_argument("scale_matrices: horizon");
  std::vector<IMat> s;
  s.push_back(IMat::Identity(sys.basis.rank_b, sys.basis.rank_b));
  for (int m = 1; m <= n; ++m) s.push_back(sys.mtheta(x[m - 1]) * s.back());
  return s;
}

std::vector<double> theta_products(const SubstitutionSystem& sys,
                                   const std::vector<int>& x, int n) {
  std::vector<double> t{1.0};
  for (int m = 1; m <= n; ++m) t.push_back(t.back() * sys.theta(x[m - 1]));
  return t;
}

Patch canonical_patch(const SubstitutionSystem& sys, const std::vector<int>& x,
                      int k, int type) {
  if (static_cast<int>(x.size()) < k) throw std::invalid_argument("canonical_patch: horizon");
  const auto scales = scale_matrices(sys, x, k);
  // levels[m][type] = canonical level-m patch.
  std::vector<std::vector<Patch>> levels(k + 1, std::vector<Patch>(sys.num_types()));
  for (int i = 0; i < sys.num_types(); ++i)
    levels[0][i].tiles.push_back({i, IVec::Zero(sys.basis.rank_b)});
  for (int m = 1; m <= k; ++m) {
    const int rule = x[m - 1];
    for (int i = 0; i < sys.num_types(); ++i)
      for (const auto& dig : sys.rules[rule].digits[i]) {
        const IVec shift = scales[m - 1] * dig.offset;
        for (const auto& t : levels[m - 1][dig.child].tiles)
          levels[m][i].tiles.push_back({t.label, t.translation + shift});
      }
  }
  return levels[k][type];
}

Patch approximant(const SubstitutionSystem& sys, const std::vector<int>& x,
                  int top_type, const PathAddress& path) {
  const int k = static_cast<int>(path.digit.size());
  const auto scales = scale_matrices(sys, x, k);
  IVec pos = IVec::Zero(sys.basis.rank_b);
  int type = top_type;
  for (int step = 0; step < k; ++step) {
    const int level = k - step;
    const int rule = x[level - 1];
    const int e = path.digit[step];
    if (e < 0 || e >= static_cast<int>(sys.rules[rule].digits[type].size()))
      throw std::invalid_argument("approximant: inconsistent path");
    const auto& dig = sys.rules[rule].digits[type][e];
    pos += scales[level - 1] * dig.offset;
    type = dig.child;
  }
  Patch p = canonical_patch(sys, x, k, top_type);
  for (auto& t : p.tiles) t.translation -= pos;
  return p;
}

std::vector<std::vector<std::vector<IVec>>> level_offsets(
    const SubstitutionSystem& sys, const std::vector<int>& x, int k,
    const ControlPointTable& cp, const ChoiceFunction& c) {
  if (!cp.exact)
    throw std::invalid_argument("level_offsets: exact control points required");
  const auto scales = scale_matrices(sys, x, k);
  const int rule = x[k - 1];
  const int m = sys.num_types();
  std::vector<std::vector<std::vector<IVec>>> u(m, std::vector<std::vector<IVec>>(m));
  for (int i = 0; i < m; ++i) {
    const auto& digs = sys.rules[rule].digits[i];
    const auto& ch = digs[c.chosen[rule][i]];
    const IVec base = ch.offset + cp.anchor[ch.child];
    for (const auto& dig : digs) {
      const IVec w = dig.offset + cp.anchor[dig.child] - base;
      u[i][dig.child].push_back(scales[k - 1] * w);
    }
  }
  return u;
}

GeomTables build_geom(const SubstitutionSystem& sys, const std::vector<int>& x, int n) {
  if (static_cast<int>(x.size()) < n) throw std::invalid_argument("build_geom: horizon");
  GeomTables g;
  g.sys = &sys;
  g.x.assign(x.begin(), x.begin() + n);
  g.n = n;
  g.theta_prod = theta_products(sys, x, n);
  const auto scales = scale_matrices(sys, x, n);
  g.offsets.resize(n + 1);
  for (int m = 1; m <= n; ++m) {
    const int rule = x[m - 1];
    g.offsets[m].resize(sys.num_types());
    for (int i = 0; i < sys.num_types(); ++i)
      for (const auto& dig : sys.rules[rule].digits[i])
        g.offsets[m][i].push_back(sys.basis.embed(scales[m - 1] * dig.offset));
  }
  if (sys.dim() == 1)
    for (int i = 0; i < sys.num_types(); ++i) g.widths.push_back(sys.tile_width(i));
  g.axis_scale = Eigen::VectorXd::Ones(sys.dim());
  rebuild_bboxes(g);
  return g;
}

void rebuild_bboxes(GeomTables& g) {
  const SubstitutionSystem& sys = *g.sys;
  const int d = sys.dim();
  g.bbox_lo.assign(g.n + 1, {});
  g.bbox_hi.assign(g.n + 1, {});
  for (int i = 0; i < sys.num_types(); ++i) {
    Eigen::VectorXd lo = Eigen::VectorXd::Zero(d), hi = Eigen::VectorXd::Zero(d);
    if (d == 1) {
      hi(0) = g.widths[i];
    } else {
      lo = Eigen::VectorXd::Constant(2, std::numeric_limits<double>::infinity());
      hi = Eigen::VectorXd::Constant(2, -std::numeric_limits<double>::infinity());
      for (const auto& c : sys.prototiles[i].cells)
        for (int a = 0; a < 2; ++a) {
          lo(a) = std::min(lo(a), c(a) * g.axis_scale(a));
          hi(a) = std::max(hi(a), (c(a) + 1.0) * g.axis_scale(a));
        }
    }
    g.bbox_lo[0].push_back(lo);
    g.bbox_hi[0].push_back(hi);
  }
  for (int m = 1; m <= g.n; ++m) {
    const int rule = g.x[m - 1];
    g.bbox_lo[m].resize(sys.num_types());
    g.bbox_hi[m].resize(sys.num_types());
    for (int i = 0; i < sys.num_types(); ++i) {
      Eigen::VectorXd lo = Eigen::VectorXd::Constant(d, std::numeric_limits<double>::infinity());
      Eigen::VectorXd hi = Eigen::VectorXd::Constant(d, -std::numeric_limits<double>::infinity());
      const auto& digs = sys.rules[rule].digits[i];
      for (size_t e = 0; e < digs.size(); ++e) {
        const Eigen::VectorXd& off = g.offsets[m][i][e];
        lo = lo.cwiseMin(off + g.bbox_lo[m - 1][digs[e].child]);
        hi = hi.cwiseMax(off + g.bbox_hi[m - 1][digs[e].child]);
      }
      g.bbox_lo[m][i] = lo;
      g.bbox_hi[m][i] = hi;
    }
  }
}

const std::vector<RealTile>& PatchCache::patch(int level, int type) {
  const auto key = std::make_pair(level, type);
  auto it = memo_.find(key);
  if (it != memo_.end()) return it->second;
  std::vector<RealTile> out;
  if (level == 0) {
    out.push_back({type, Eigen::VectorXd::Zero(g_->dim())});
  } else {
    const int rule = g_->x[level - 1];
    const auto& digs = g_->sys->rules[rule].digits[type];
    for (size_t e = 0; e < digs.size(); ++e) {
      const auto& sub = patch(level - 1, digs[e].child);
      const Eigen::VectorXd& off = g_->offsets[level][type][e];
      for (const auto& t : sub) out.push_back({t.type, t.pos + off});
    }
  }
  return memo_.emplace(key, std::move(out)).first->second;
}

std::vector<std::vector<long long>> height_vectors(const SubstitutionSystem& sys,
                                                   const std::vector<int>& x, int n) {
  std::vector<std::vector<long long>> h(n + 1, std::vector<long long>(sys.num_types(), 1));
  for (int m = 1; m <= n; ++m) {
    const Eigen::MatrixXi f = substitution_matrix(sys, x[m - 1]);
    for (int i = 0; i < sys.num_types(); ++i) {
      long long s = 0;
      for (int j = 0; j < sys.num_types(); ++j) s += static_cast<long long>(f(i, j)) * h[m - 1][j];
      h[m][i] = s;
    }
  }
  return h;
}

namespace {

enum class Containment { Inside, Outside, Partial };

Containment classify(const Eigen::VectorXd& lo, const Eigen::VectorXd& hi, const Region& r) {
  bool inside = true, outside = false;
  for (int a = 0; a < lo.size(); ++a) {
    if (lo(a) < r.lo(a) - kEps || hi(a) > r.hi(a) + kEps) inside = false;
    if (hi(a) <= r.lo(a) + kEps || lo(a) >= r.hi(a) - kEps) outside = true;
  }
  if (inside) return Containment::Inside;
  if (outside) return Containment::Outside;
  return Containment::Partial;
}

void decompose_node(const GeomTables& g, int level, int type,
                    const Eigen::VectorXd& pos, const Region& r,
                    const std::vector<std::vector<long long>>& h, PatchCache& cache,
                    SupertileDecomposition& out) {
  const Eigen::VectorXd lo = pos + g.bbox_lo[level][type];
  const Eigen::VectorXd hi = pos + g.bbox_hi[level][type];
  const Containment c = classify(lo, hi, r);
  if (c == Containment::Outside) return;
  if (c == Containment::Inside) {
    out.pieces.push_back({level, type, pos});
    out.kappa[{level, type}] += 1;
    out.total_tiles += h[level][type];
    return;
  }
  if (level == 0) return;  // a partially covered tile is not part of the O^- patch
  if (level == 1) {
    // Enumerate the constituent tiles; keep those fully inside.
    for (const auto& t : cache.patch(level, type)) {
      const Eigen::VectorXd tlo = pos + t.pos + g.bbox_lo[0][t.type];
      const Eigen::VectorXd thi = pos + t.pos + g.bbox_hi[0][t.type];
      if (classify(tlo, thi, r) == Containment::Inside) {
        out.remainder.push_back({t.type, pos + t.pos});
        out.total_tiles += 1;
      }
    }
    return;
  }
  const int rule = g.x[level - 1];
  const auto& digs = g.sys->rules[rule].digits[type];
  for (size_t e = 0; e < digs.size(); ++e)
    decompose_node(g, level - 1, digs[e].child, pos + g.offsets[level][type][e], r, h, cache, out);
}

}  // namespace

SupertileDecomposition supertile_decomposition(const GeomTables& g, int top_type,
                                               const Eigen::VectorXd& shift,
                                               const Region& r, PatchCache& cache) {
  SupertileDecomposition out;
  const auto h = height_vectors(*g.sys, g.x, g.n);
  decompose_node(g, g.n, top_type, shift, r, h, cache, out);
  return out;
}

}  // namespace tc
