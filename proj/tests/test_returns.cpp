#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "tilecocycle/returns.hpp"
#include "tilecocycle/systems.hpp"

#include <random>

using namespace tc;

TEST_CASE("TMPD return group is Z with G = [2]") {
  const SubstitutionSystem sys = make_tmpd();
  const std::vector<int> x = {0, 1, 0, 0, 1, 1, 0, 1};
  const ReturnVectorSet rv = enumerate_return_vectors(sys, x, 5, 32.0);
  CHECK_FALSE(rv.vectors.empty());
  const ReturnGroup grp = group_basis(sys, rv);
  REQUIRE(grp.rank == 1);
  CHECK(grp.v_coords(0, 0) == 1);
  CHECK(grp.v_real(0, 0) == doctest::Approx(1.0));
  for (int l = 0; l < 2; ++l) {
    const ZMat g = g_matrix(sys, l, grp, grp);
    REQUIRE(g.rows() == 1);
    CHECK(g(0, 0) == 2);
  }
}

TEST_CASE("Fibonacci return group is the full module with G = Mtheta") {
  const SubstitutionSystem sys = make_fibonacci();
  const std::vector<int> x(8, 0);
  const ReturnVectorSet rv = enumerate_return_vectors(sys, x, 8, 64.0);
  const ReturnGroup grp = group_basis(sys, rv);
  REQUIRE(grp.rank == 2);
  CHECK(grp.v_coords == to_zmat(Eigen::MatrixXi::Identity(2, 2)));
  const ZMat g = g_matrix(sys, 0, grp, grp);
  // Mtheta = [[0,1],[1,1]] acting on the canonical basis.
  CHECK(g(0, 0) == 0);
  CHECK(g(0, 1) == 1);
  CHECK(g(1, 0) == 1);
  CHECK(g(1, 1) == 1);
}

TEST_CASE("address round-trips random group elements") {
  const SubstitutionSystem sys = make_fibonacci();
  const ReturnGroup grp =
      group_basis(sys, enumerate_return_vectors(sys, std::vector<int>(8, 0), 8, 64.0));
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<long long> u(-50, 50);
  for (int t = 0; t < 50; ++t) {
    std::vector<BigInt> alpha;
    for (Index j = 0; j < grp.rank; ++j) alpha.push_back(BigInt(u(rng)));
    IVec tau = IVec::Zero(grp.v_coords.rows());
    for (Index i = 0; i < grp.v_coords.rows(); ++i) {
      BigInt s = 0;
      for (Index j = 0; j < grp.rank; ++j) s += grp.v_coords(i, j) * alpha[static_cast<size_t>(j)];
      tau(i) = s.convert_to<long long>();
    }
    CHECK(address(grp, tau) == alpha);
  }
}

TEST_CASE("address throws outside the group") {
  const SubstitutionSystem sys = make_tmpd();
  ReturnGroup grp;
  grp.rank = 1;
  grp.v_coords = ZMat(1, 1);
  grp.v_coords(0, 0) = 2;  // 2Z
  grp.v_real = Eigen::MatrixXd::Constant(1, 1, 2.0);
  IVec odd(1);
  odd << 3;
  CHECK_THROWS(address(grp, odd));
  (void)sys;
}

TEST_CASE("postal check on the PD-squared word") {
  const SubstitutionSystem sys = make_tmpd();
  const ReturnGroup grp =
      group_basis(sys, enumerate_return_vectors(sys, {0, 1, 0, 0, 1, 1}, 5, 32.0));
  const PostalResult pr = postal_check(sys, {1, 1}, grp);
  CHECK(pr.postal);
  REQUIRE(pr.divisors.size() == 1);
  CHECK(pr.divisors[0] == 1);
  CHECK(pr.rank == grp.rank);
}
