#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "tilecocycle/systems.hpp"
#include "tilecocycle/twisted.hpp"

#include <numbers>
#include <random>

using namespace tc;

namespace {

std::vector<int> random_letters(int n, int rules, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> u(0, rules - 1);
  std::vector<int> x(static_cast<size_t>(n));
  for (int& v : x) v = u(rng);
  return x;
}

}  // namespace

TEST_CASE("untwisted indicator integral is the region volume") {
  const SubstitutionSystem sys = make_tmpd();
  const std::vector<int> x = random_letters(24, 2, 1);
  const GeomTables g = build_geom(sys, x, 24);
  PatchCache cache(g);
  const TLCFunction f = TLCFunction::indicator(2);
  const int n = covering_level(g, 10.0);
  GeomTables sub = g;
  sub.n = n;
  sub.x.resize(n);
  const Eigen::VectorXd shift = centering_shift(sub, n, 0);
  Region r{Eigen::VectorXd::Zero(1), 10.0};
  for (TwistedMethod m : {TwistedMethod::Cocycle, TwistedMethod::Brute}) {
    const Cplx v =
        twisted_integral_region(sub, cache, 0, shift, f, Eigen::VectorXd::Zero(1), r, m);
    CHECK(v.real() == doctest::Approx(20.0).epsilon(1e-12));
    CHECK(v.imag() == doctest::Approx(0.0).epsilon(1e-12));
  }
}

TEST_CASE("single-tile transform at lambda = 1/2 is 2/(pi i)") {
  const SubstitutionSystem sys = make_tmpd();
  const GeomTables g = build_geom(sys, {0}, 1);
  Eigen::VectorXd l(1);
  l << 0.5;
  const Cplx v = tile_transform(g, 0, l);
  CHECK(v.real() == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(v.imag() == doctest::Approx(-2.0 / std::numbers::pi).epsilon(1e-12));
}

TEST_CASE("growth fit recovers a synthetic exponent") {
  TwistedIntegralSeries s;
  s.lambda = Eigen::VectorXd::Zero(1);
  for (double R = 4.0; R <= 4096.0; R *= 1.3) {
    s.radii.push_back(R);
    s.values.push_back(Cplx(std::pow(R, 0.6), 0.0));
  }
  const GrowthFit fit = growth_fit(s, 1);
  CHECK(fit.slope == doctest::Approx(0.6).epsilon(1e-9));
  CHECK(fit.alpha_hat == doctest::Approx(0.4).epsilon(1e-9));
  CHECK(fit.residual < 1e-9);
}

TEST_CASE("cocycle and brute region sums agree off the grid") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> ul(0.0, 1.0), ur(3.0, 200.0);
  for (const auto& sys : {make_tmpd(), make_fibonacci()}) {
    const std::vector<int> x = random_letters(24, sys.num_rules(), 8);
    const GeomTables g = build_geom(sys, x, 24);
    PatchCache cache(g);
    for (const TLCFunction& f : {TLCFunction::indicator(2), TLCFunction::dirac(2)}) {
      for (int t = 0; t < 8; ++t) {
        Eigen::VectorXd l(1);
        l << ul(rng);
        const double R = ur(rng);
        const int n = covering_level(g, R);
        GeomTables sub = g;
        sub.n = n;
        sub.x.resize(n);
        const Eigen::VectorXd shift = centering_shift(sub, n, 0);
        Region r{Eigen::VectorXd::Zero(1), R};
        const Cplx a =
            twisted_integral_region(sub, cache, 0, shift, f, l, r, TwistedMethod::Cocycle);
        const Cplx b =
            twisted_integral_region(sub, cache, 0, shift, f, l, r, TwistedMethod::Brute);
        CHECK(std::abs(a - b) < 1e-9);
      }
    }
  }
}

TEST_CASE("2d cocycle and brute agree on the block substitution") {
  const SubstitutionSystem sys = make_block2d();
  const std::vector<int> x(12, 0);
  const GeomTables g = build_geom(sys, x, 12);
  PatchCache cache(g);
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> ul(0.0, 1.0), ur(2.0, 60.0);
  const TLCFunction f = TLCFunction::dirac(2);
  for (int t = 0; t < 6; ++t) {
    Eigen::VectorXd l(2);
    l << ul(rng), ul(rng);
    const double R = ur(rng);
    const int n = covering_level(g, R);
    GeomTables sub = g;
    sub.n = n;
    sub.x.resize(n);
    const Eigen::VectorXd shift = centering_shift(sub, n, 0);
    Region r{Eigen::VectorXd::Zero(2), R};
    const Cplx a = twisted_integral_region(sub, cache, 0, shift, f, l, r, TwistedMethod::Cocycle);
    const Cplx b = twisted_integral_region(sub, cache, 0, shift, f, l, r, TwistedMethod::Brute);
    CHECK(std::abs(a - b) < 1e-9);
  }
}

TEST_CASE("supertile closed form matches the brute patch sum") {
  const SubstitutionSystem sys = make_tmpd();
  const std::vector<int> x = {0, 1, 1, 0, 0, 1, 0, 1};
  const GeomTables g = build_geom(sys, x, 8);
  PatchCache cache(g);
  Eigen::VectorXd l(1);
  l << 0.2713;
  const TLCFunction f = TLCFunction::dirac(2);
  for (int k : {1, 3, 6, 8})
    for (int j = 0; j < 2; ++j) {
      const Cplx closed = twisted_integral_supertile(g, cache, k, j, l, f);
      Cplx brute = 0;
      for (const auto& t : cache.patch(k, j))
        brute += std::exp(Cplx(0.0, -2.0 * std::numbers::pi * l.dot(t.pos)));
      CHECK(std::abs(closed - brute) < 1e-10);
    }
}

TEST_CASE("veech transport fixtures on the doubling lattice") {
  // G = [2] on Z: lambda integral -> distance 0, lattice hit at every return.
  std::vector<ZMat> gs;
  ZMat two(1, 1);
  two(0, 0) = 2;
  gs = {two, two};
  const std::vector<int> letters(64, 0);
  const std::vector<long long> returns = {4, 9, 17, 30, 41};
  {
    const VeechDensitySeries s =
        veech_density(letters, returns, gs, Eigen::VectorXd::Ones(1), 0.25);
    for (size_t j = 0; j < s.k_j.size(); ++j) {
      CHECK(s.dist[j] == doctest::Approx(0.0));
      CHECK(s.indicator[j] == 1);
    }
    CHECK(s.d_n.back() > 0.0);
  }
  {
    // Exact transport of 1/3: doubling permutes {1/3, 2/3}, distance 1/3.
    std::vector<BigRational> v0{BigRational(BigInt(1), BigInt(3))};
    const VeechDensitySeries s =
        veech_density_exact(letters, returns, gs, v0, BigRational(BigInt(1), BigInt(4)));
    for (size_t j = 0; j < s.k_j.size(); ++j) {
      CHECK(s.dist[j] == doctest::Approx(1.0 / 3.0));
      CHECK(s.indicator[j] == 0);
    }
  }
}

TEST_CASE("spectral bound window and positivity") {
  const SubstitutionSystem sys = make_tmpd();
  const std::vector<int> x = random_letters(24, 2, 13);
  const GeomTables g = build_geom(sys, x, 24);
  Eigen::VectorXd l(1);
  l << 1.0 / 3.0;
  const SpectralBound b = spectral_bound(g, TLCFunction::dirac(2), l, 1.0 / 64, 8, 5);
  CHECK(b.big_r == doctest::Approx(16.0));
  CHECK(b.bound >= 0.0);
  CHECK(b.l2_estimate >= 0.0);
  CHECK(b.samples == 8);
  CHECK(b.c2 > 1.0);  // ~16/pi^2
  CHECK(b.c2 < 2.0);
}

TEST_CASE("point evaluation of the indicator profile") {
  const SubstitutionSystem sys = make_tmpd();
  const std::vector<int> x(10, 0);
  const GeomTables g = build_geom(sys, x, 10);
  PatchCache cache(g);
  const TLCFunction f = TLCFunction::indicator(2);
  Eigen::VectorXd inside(1), outside(1);
  inside << 3.7;
  outside << 2000.0;
  CHECK(point_eval(g, 0, Eigen::VectorXd::Zero(1), f, cache, inside).real() ==
        doctest::Approx(1.0));
  CHECK(std::abs(point_eval(g, 0, Eigen::VectorXd::Zero(1), f, cache, outside)) ==
        doctest::Approx(0.0));
}
