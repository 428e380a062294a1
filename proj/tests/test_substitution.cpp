#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "tilecocycle/substitution.hpp"
#include "tilecocycle/systems.hpp"

using namespace tc;

TEST_CASE("substitution matrices of the bundled systems") {
  const SubstitutionSystem tmpd = make_tmpd();
  Eigen::MatrixXi tm(2, 2), pd(2, 2);
  tm << 1, 1, 1, 1;
  pd << 1, 1, 2, 0;
  CHECK(substitution_matrix(tmpd, 0) == tm);
  CHECK(substitution_matrix(tmpd, 1) == pd);

  const SubstitutionSystem fib = make_fibonacci();
  Eigen::MatrixXi f(2, 2);
  f << 1, 1, 1, 0;
  CHECK(substitution_matrix(fib, 0) == f);

  const SubstitutionSystem blk = make_block2d();
  Eigen::MatrixXi b(2, 2);
  b << 2, 2, 2, 2;
  CHECK(substitution_matrix(blk, 0) == b);
}

TEST_CASE("two Thue-Morse inflations of a single a give abba") {
  const SubstitutionSystem sys = make_tmpd();
  Patch p;
  p.tiles.push_back({0, IVec::Zero(1)});
  p = inflate(sys, 0, p);
  REQUIRE(p.tiles.size() == 2);
  CHECK(p.tiles[0].label == 0);
  CHECK(p.tiles[1].label == 1);
  p = inflate(sys, 0, p);
  REQUIRE(p.tiles.size() == 4);
  const int labels[] = {0, 1, 1, 0};
  for (int i = 0; i < 4; ++i) {
    CHECK(p.tiles[i].label == labels[i]);
    CHECK(p.tiles[i].translation(0) == i);
  }
}

TEST_CASE("validation passes on the three working systems") {
  for (const auto& sys : {make_tmpd(), make_fibonacci(), make_block2d()}) {
    std::vector<int> support;
    for (int l = 0; l < sys.num_rules(); ++l) support.push_back(l);
    const ValidationReport rep = validate_system(sys, support);
    CHECK(rep.ok());
    CHECK(rep.primitivity_window >= 1);
  }
}

TEST_CASE("broken covering fixture fails and names the rule and parent") {
  const SubstitutionSystem sys = make_broken_covering();
  const ValidationReport rep = validate_system(sys, {0});
  CHECK_FALSE(rep.ok());
  bool found = false;
  for (const auto& c : rep.checks)
    if (!c.pass && c.name == "covering rule 0 parent 0") found = true;
  CHECK(found);
}

TEST_CASE("region_clip keeps exactly the tiles inside the box") {
  const SubstitutionSystem sys = make_tmpd();
  Patch p;
  for (int i = 0; i < 6; ++i) {
    IVec t(1);
    t << i;
    p.tiles.push_back({i % 2, t});
  }
  Region r{Eigen::VectorXd::Constant(1, 3.0), 2.0};  // [1, 5]
  const Patch q = region_clip(sys, p, r);
  REQUIRE(q.tiles.size() == 4);  // tiles [1,2] [2,3] [3,4] [4,5]
  CHECK(q.tiles.front().translation(0) == 1);
  CHECK(q.tiles.back().translation(0) == 4);
}
