#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "tilecocycle/deform.hpp"
#include "tilecocycle/systems.hpp"
#include "tilecocycle/twisted.hpp"

#include <random>

using namespace tc;

TEST_CASE("identity length deformation reproduces the base geometry") {
  const SubstitutionSystem sys = make_tmpd();
  const std::vector<int> x = {0, 1, 0, 0, 1, 1};
  const GeomTables base = build_geom(sys, x, 6);
  DeformationParameter d;
  d.mode = DeformationParameter::Mode::Lengths;
  d.lengths = {1.0, 1.0};
  const GeomTables def = apply_deformation(sys, x, 6, d);
  for (int m = 1; m <= 6; ++m)
    for (int i = 0; i < 2; ++i) {
      REQUIRE(def.offsets[m][i].size() == base.offsets[m][i].size());
      for (size_t e = 0; e < base.offsets[m][i].size(); ++e)
        CHECK((def.offsets[m][i][e] - base.offsets[m][i][e]).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("Fibonacci re-lengthed to (1,1) has integer supertile widths") {
  const SubstitutionSystem sys = make_fibonacci();
  const std::vector<int> x(8, 0);
  DeformationParameter d;
  d.mode = DeformationParameter::Mode::Lengths;
  d.lengths = {1.0, 1.0};
  const GeomTables def = apply_deformation(sys, x, 8, d);
  // Level-k a-supertile now has width = tile count = Fibonacci number.
  long long fib[] = {1, 2, 3, 5, 8, 13, 21, 34, 55};
  for (int k = 1; k <= 8; ++k)
    CHECK(def.bbox_hi[k][0](0) == doctest::Approx(static_cast<double>(fib[k])).epsilon(1e-12));
  // Combinatorics untouched: the level-1 a-supertile still has two children.
  CHECK(def.offsets[1][0].size() == 2);
  CHECK(def.offsets[1][0][1](0) == doctest::Approx(1.0));  // deformed a-length
}

TEST_CASE("deformed cocycle still matches the brute sum") {
  const SubstitutionSystem sys = make_tmpd();
  const std::vector<int> x = {0, 1, 1, 0, 0, 1, 0, 1, 0, 0, 1, 1};
  DeformationParameter d;
  d.mode = DeformationParameter::Mode::Lengths;
  d.lengths = {1.0, std::numbers::sqrt2};
  const GeomTables def = apply_deformation(sys, x, 12, d);
  PatchCache cache(def);
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> ul(0.0, 1.0), ur(3.0, 80.0);
  const TLCFunction f = TLCFunction::dirac(2);
  for (int t = 0; t < 6; ++t) {
    Eigen::VectorXd l(1);
    l << ul(rng);
    const double R = ur(rng);
    const int n = covering_level(def, R);
    GeomTables sub = def;
    sub.n = n;
    sub.x.resize(n);
    const Eigen::VectorXd shift = centering_shift(sub, n, 0);
    Region r{Eigen::VectorXd::Zero(1), R};
    const Cplx a = twisted_integral_region(sub, cache, 0, shift, f, l, r, TwistedMethod::Cocycle);
    const Cplx b = twisted_integral_region(sub, cache, 0, shift, f, l, r, TwistedMethod::Brute);
    CHECK(std::abs(a - b) < 1e-9);
  }
}

TEST_CASE("degenerate deformations are rejected") {
  const SubstitutionSystem sys = make_tmpd();
  const std::vector<int> x(6, 0);
  DeformationParameter d;
  d.mode = DeformationParameter::Mode::Lengths;
  d.lengths = {0.0, 0.0};
  CHECK_THROWS(apply_deformation(sys, x, 6, d));
}

TEST_CASE("global linear deformation scales the block axes") {
  const SubstitutionSystem sys = make_block2d();
  const std::vector<int> x(6, 0);
  DeformationParameter d;
  d.mode = DeformationParameter::Mode::GlobalLinear;
  d.diag = Eigen::VectorXd(2);
  d.diag << 2.0, 0.5;
  const GeomTables def = apply_deformation(sys, x, 6, d);
  CHECK(def.axis_scale(0) == doctest::Approx(2.0));
  CHECK(def.axis_scale(1) == doctest::Approx(0.5));
  CHECK(def.bbox_hi[1][0](0) == doctest::Approx(4.0));
  CHECK(def.bbox_hi[1][0](1) == doctest::Approx(1.0));
}

TEST_CASE("composition-lattice transport data") {
  const SubstitutionSystem sys = make_tmpd();
  const auto gs = composition_g(sys);
  REQUIRE(gs.size() == 2);
  // F_TM^T = [[1,1],[1,1]], F_PD^T = [[1,2],[1,0]].
  CHECK(gs[0](0, 0) == 1);
  CHECK(gs[0](1, 0) == 1);
  CHECK(gs[1](0, 1) == 2);
  CHECK(gs[1](1, 1) == 0);
  const Eigen::VectorXd v0 = composition_v0({1.0, 1.0}, 1.0 / 3.0);
  CHECK(v0(0) == doctest::Approx(1.0 / 3.0));
  CHECK(v0(1) == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("asymptotic cycle of a positive length deformation is invertible") {
  const SubstitutionSystem sys = make_tmpd();
  const std::vector<int> x(48, 0);
  DeformationParameter d;
  d.mode = DeformationParameter::Mode::Lengths;
  d.lengths = {1.0, 2.0};
  const AsymptoticCycle c = asymptotic_cycle(sys, x, d);
  CHECK(c.invertible);
  CHECK(c.det == doctest::Approx(1.5).epsilon(1e-9));  // frequencies (1/2, 1/2)
}
