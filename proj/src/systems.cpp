#include "tilecocycle/systems.hpp"

namespace tc {

namespace {

IVec iv1(long long a) {
  IVec v(1);
  v << a;
  return v;
}

IVec iv2(long long a, long long b) {
  IVec v(2);
  v << a, b;
  return v;
}

Prototile unit_tile_1d(int label) {
  Prototile t;
  t.label = label;
  t.length = iv1(1);
  t.anchor = iv1(0);
  return t;
}

}  // namespace

SubstitutionSystem make_tmpd() {
  SubstitutionSystem sys;
  sys.basis = integer_module(1, {2, 2});
  sys.prototiles = {unit_tile_1d(0), unit_tile_1d(1)};
  SubstitutionRule tm;  // a -> ab, b -> ba
  tm.theta_index = 0;
  tm.digits = {{{0, iv1(0)}, {1, iv1(1)}}, {{1, iv1(0)}, {0, iv1(1)}}};
  SubstitutionRule pd;  // a -> ab, b -> aa
  pd.theta_index = 1;
  pd.digits = {{{0, iv1(0)}, {1, iv1(1)}}, {{0, iv1(0)}, {0, iv1(1)}}};
  sys.rules = {tm, pd};
  return sys;
}

SubstitutionSystem make_fibonacci() {
  SubstitutionSystem sys;
  ModuleBasis b;
  b.dim_d = 1;
  b.rank_b = 2;
  const double phi = refine_root({-1, -1, 1}, 1.6);
  b.embedding.resize(1, 2);
  b.embedding << 1.0, phi;  // module Z + Z*phi, coordinates (m, n) -> m + n*phi
  IMat mt(2, 2);
  // phi * (m + n*phi) = n + (m + n)*phi.
  mt << 0, 1, 1, 1;
  b.mult_tables = {mt};
  b.theta_bar.resize(1);
  b.theta_bar << phi;
  sys.basis = b;

  Prototile a;  // length phi
  a.label = 0;
  a.length = iv2(0, 1);
  a.anchor = iv2(0, 0);
  Prototile bb;  // length 1
  bb.label = 1;
  bb.length = iv2(1, 0);
  bb.anchor = iv2(0, 0);
  sys.prototiles = {a, bb};

  SubstitutionRule fib;  // a -> ab, b -> a
  fib.theta_index = 0;
  fib.digits = {{{0, iv2(0, 0)}, {1, iv2(0, 1)}}, {{0, iv2(0, 0)}}};
  sys.rules = {fib};
  return sys;
}

SubstitutionSystem make_block2d() {
  SubstitutionSystem sys;
  sys.basis = integer_module(2, {2});
  Prototile a, b;
  a.label = 0;
  a.cells = {Eigen::Vector2i(0, 0)};
  a.anchor = iv2(0, 0);
  b.label = 1;
  b.cells = {Eigen::Vector2i(0, 0)};
  b.anchor = iv2(0, 0);
  sys.prototiles = {a, b};

  SubstitutionRule r;
  r.theta_index = 0;
  // a -> a at (0,0), b at (1,0), b at (0,1), a at (1,1); b swaps colors.
  r.digits = {{{0, iv2(0, 0)}, {1, iv2(1, 0)}, {1, iv2(0, 1)}, {0, iv2(1, 1)}},
              {{1, iv2(0, 0)}, {0, iv2(1, 0)}, {0, iv2(0, 1)}, {1, iv2(1, 1)}}};
  sys.rules = {r};
  return sys;
}

SubstitutionSystem make_broken_covering() {
  SubstitutionSystem sys;
  sys.basis = integer_module(1, {2});
  sys.prototiles = {unit_tile_1d(0)};
  SubstitutionRule r;  // a -> a: length 1 != 2, covering fails
  r.theta_index = 0;
  r.digits = {{{0, iv1(0)}}};
  sys.rules = {r};
  return sys;
}

}  // namespace tc
