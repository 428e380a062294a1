#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "tilecocycle/exact.hpp"

using namespace tc;

namespace {

ZMat mat(std::initializer_list<std::initializer_list<long long>> rows) {
  ZMat m(static_cast<Index>(rows.size()), static_cast<Index>(rows.begin()->size()));
  Index i = 0;
  for (const auto& r : rows) {
    Index j = 0;
    for (long long v : r) m(i, j++) = v;
    ++i;
  }
  return m;
}

}  // namespace

TEST_CASE("DMat product and transpose") {
  const ZMat a = mat({{1, 2}, {3, 4}});
  const ZMat b = mat({{0, 1}, {1, 1}});
  CHECK((a * b) == mat({{2, 3}, {4, 7}}));
  CHECK(a.transpose() == mat({{1, 3}, {2, 4}}));
  CHECK((a * ZMat::identity(2)) == a);
}

TEST_CASE("hermite_basis: gcd of a single row") {
  // Column lattice of [2 3] in Z^1 is gcd(2,3) Z = Z.
  CHECK(hermite_basis(mat({{2, 3}})) == mat({{1}}));
  CHECK(hermite_basis(mat({{4, 6}})) == mat({{2}}));
}

TEST_CASE("hermite_basis: canonical under column operations") {
  // Unimodular recombinations of the generators leave the basis unchanged:
  // columns {(2,0),(0,3)} and {(2,3),(0,3)} span the same lattice.
  const ZMat a = mat({{2, 0}, {0, 3}});
  const ZMat c = mat({{2, 0}, {3, 3}});
  CHECK(hermite_basis(a) == hermite_basis(c));
  CHECK(integer_rank(a) == 2);
}

TEST_CASE("hermite_basis: diagonal is already canonical") {
  const ZMat d = mat({{2, 0}, {0, 2}});
  const ZMat h = hermite_basis(d);
  REQUIRE(h.cols() == 2);
  // The column lattice 2Z^2 has a unique HNF basis: diag(2, 2).
  CHECK(h == d);
}

TEST_CASE("smith_divisors") {
  CHECK(smith_divisors(mat({{2, 0}, {0, 3}})) == std::vector<BigInt>{1, 6});
  CHECK(smith_divisors(mat({{2, 4}, {4, 8}})) == std::vector<BigInt>{2});
  CHECK(smith_divisors(ZMat::identity(3)) == std::vector<BigInt>{1, 1, 1});
  CHECK(smith_divisors(mat({{4, 0}, {0, 6}})) == std::vector<BigInt>{2, 12});
}

TEST_CASE("integer_rank") {
  CHECK(integer_rank(mat({{1, 2}, {2, 4}})) == 1);
  CHECK(integer_rank(mat({{1, 2}, {3, 4}})) == 2);
  CHECK(integer_rank(ZMat(2, 2)) == 0);
}

TEST_CASE("solve_integer") {
  const ZMat a = mat({{2}, {0}});
  auto x = solve_integer(a, {BigInt(4), BigInt(0)});
  REQUIRE(x.has_value());
  CHECK((*x)[0] == 2);
  CHECK_FALSE(solve_integer(a, {BigInt(3), BigInt(0)}).has_value());  // not integral
  CHECK_FALSE(solve_integer(a, {BigInt(4), BigInt(1)}).has_value());  // inconsistent

  const ZMat f = mat({{0, 1}, {1, 1}});
  auto y = solve_integer(f, {BigInt(5), BigInt(3)});
  REQUIRE(y.has_value());
  CHECK((*y)[0] == -2);
  CHECK((*y)[1] == 5);
}
