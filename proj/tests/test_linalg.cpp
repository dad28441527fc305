#include <catch2/catch_amalgamated.hpp>

#include "testutil.hpp"

TEST_CASE("rational parsing accepts integers and fractions") {
  CHECK(Q("3") == tv::Rat(3));
  CHECK(Q("-7/2") == tv::Rat(-7, 2));
  CHECK(Q("0") == tv::Rat(0));
  CHECK(Q("10/4") == tv::Rat(5, 2));
  CHECK(tv::rat_str(Q("10/4")) == "5/2");
  CHECK(tv::rat_str(tv::Rat(-3)) == "-3");
}

TEST_CASE("rational parsing rejects junk") {
  CHECK_THROWS_AS(Q(""), tv::ParseError);
  CHECK_THROWS_AS(Q("abc"), tv::ParseError);
  CHECK_THROWS_AS(Q("1/0"), tv::ParseError);
  CHECK_THROWS_AS(Q("1.5"), tv::ParseError);
  CHECK_THROWS_AS(Q("2/3/4"), tv::ParseError);
}

TEST_CASE("vector arithmetic") {
  tv::QVec a = qvi({1, 2, 3});
  tv::QVec b = qvi({4, -1, 0});
  CHECK(tv::dot(a, b) == Q(2));
  CHECK(tv::norm2(a) == Q(14));
  CHECK(tv::add(a, b) == qvi({5, 1, 3}));
  CHECK(tv::sub(a, b) == qvi({-3, 3, 3}));
  CHECK(tv::scale(a, Q(1, 2)) == qv({Q(1, 2), Q(1), Q(3, 2)}));
  CHECK(tv::is_zero_vec(tv::zero_vec(3)));
  CHECK_FALSE(tv::is_zero_vec(a));
  CHECK_THROWS_AS(tv::dot(a, qvi({1, 2})), tv::DimensionMismatch);
}

TEST_CASE("rref and rank") {
  tv::QMat m = {qvi({1, 2, 3}), qvi({2, 4, 6}), qvi({0, 1, 1})};
  CHECK(tv::rank(m) == 2);
  auto [r, pivots] = tv::rref(m);
  REQUIRE(pivots == std::vector<int>{0, 1});
  CHECK(r[0] == qvi({1, 0, 1}));
  CHECK(r[1] == qvi({0, 1, 1}));
  CHECK(tv::rank(tv::identity_mat(4)) == 4);
}

TEST_CASE("kernel basis spans the null space") {
  tv::QMat m = {qvi({1, 1, 0, 0}), qvi({0, 0, 1, 1})};
  tv::SubspaceBasis k = tv::kernel_basis(m);
  REQUIRE(k.dim() == 2);
  for (const tv::QVec& w : k.rows) {
    CHECK(tv::dot(m[0], w) == Q(0));
    CHECK(tv::dot(m[1], w) == Q(0));
  }
}

TEST_CASE("linear solving") {
  tv::QMat a = {qvi({2, 1}), qvi({1, -1})};
  tv::QVec x = tv::solve_linear(a, qvi({5, 1}));
  CHECK(x == qvi({2, 1}));
  CHECK_THROWS_AS(tv::solve_linear(tv::QMat{qvi({1, 1}), qvi({2, 2})},
                                   qvi({1, 1})),
                  tv::SingularMatrix);

  auto sol = tv::solve_consistent(tv::QMat{qvi({1, 1}), qvi({2, 2})},
                                  qvi({3, 6}));
  REQUIRE(sol.has_value());
  CHECK((*sol)[0] + (*sol)[1] == Q(3));
  CHECK_FALSE(tv::solve_consistent(tv::QMat{qvi({1, 1}), qvi({2, 2})},
                                   qvi({3, 7}))
                  .has_value());
}

TEST_CASE("primitive integral scaling") {
  CHECK(tv::primitive_integral(qv({Q(1, 2), Q(3, 2)})) == qvi({1, 3}));
  CHECK(tv::primitive_integral(qvi({4, -6})) == qvi({2, -3}));
  CHECK(tv::primitive_integral(qvi({0, 0})) == qvi({0, 0}));
}

TEST_CASE("canonical orientation makes the first nonzero entry positive") {
  CHECK(tv::lin_canonical(qv({Q(-1, 5), Q(3, 5)})) == qvi({1, -3}));
  CHECK(tv::lin_canonical(qv({Q(2, 3), Q(-4, 3)})) == qvi({1, -2}));
  CHECK(tv::lin_canonical(qvi({0, -2, 4})) == qvi({0, 1, -2}));
}

TEST_CASE("projection is idempotent, symmetric, and Pythagorean") {
  tv::SubspaceBasis w =
      tv::subspace_basis(4, {qvi({1, 0, 1, 1}), qvi({0, 1, 0, 1})});
  REQUIRE(w.dim() == 2);
  tv::QVec v = qv({Q(7), Q(-2), Q(1, 3), Q(5, 2)});
  tv::QVec p = tv::project_onto(w, v);
  CHECK(tv::project_onto(w, p) == p);
  tv::QVec rest = tv::sub(v, p);
  CHECK(tv::norm2(v) == tv::norm2(p) + tv::norm2(rest));
  for (const tv::QVec& row : w.rows) CHECK(tv::dot(row, rest) == Q(0));

  tv::QMat pm = tv::proj_matrix(w, 4);
  CHECK(pm == tv::transpose(pm));
  CHECK(tv::mat_vec(pm, v) == p);
}

TEST_CASE("subspace containment") {
  tv::SubspaceBasis big =
      tv::subspace_basis(3, {qvi({1, 0, 0}), qvi({0, 1, 0})});
  tv::SubspaceBasis small = tv::subspace_basis(3, {qvi({1, 1, 0})});
  tv::SubspaceBasis other = tv::subspace_basis(3, {qvi({0, 0, 1})});
  CHECK(tv::subspace_contains(big, small));
  CHECK_FALSE(tv::subspace_contains(small, big));
  CHECK_FALSE(tv::subspace_contains(big, other));
  CHECK(tv::subspace_contains(big, big));
}

TEST_CASE("cone membership by exact feasibility") {
  std::vector<tv::QVec> quadrant = {qvi({1, 0}), qvi({0, 1})};
  CHECK(tv::in_cone(quadrant, qvi({3, 5})));
  CHECK(tv::in_cone(quadrant, qvi({0, 0})));
  CHECK_FALSE(tv::in_cone(quadrant, qvi({-1, 2})));
  CHECK(tv::in_cone({qvi({1, 1}), qvi({1, -1})}, qvi({2, 0})));
  CHECK_FALSE(tv::in_cone({qvi({1, 1}), qvi({1, -1})}, qvi({0, 1})));
}

TEST_CASE("extremal subset drops conic combinations") {
  std::vector<tv::QVec> gens = {qvi({1, 0}), qvi({0, 1}), qvi({1, 1}),
                                qvi({2, 0})};
  auto ext = tv::extremal_subset(gens);
  REQUIRE(ext.size() == 2);
  CHECK(ext[0] == qvi({1, 0}));
  CHECK(ext[1] == qvi({0, 1}));
}

TEST_CASE("dual description recovers the extremal rays") {
  // x >= 0, y >= 0, x + y >= 0 (redundant): rays are the axes
  auto rays = tv::dd_rays({qvi({1, 0}), qvi({0, 1}), qvi({1, 1})}, 2);
  REQUIRE(rays.size() == 2);
  CHECK(tv::in_cone(rays, qvi({1, 0})));
  CHECK(tv::in_cone(rays, qvi({0, 1})));
  // x - y >= 0, y >= 0
  auto wedge = tv::dd_rays({qvi({1, -1}), qvi({0, 1})}, 2);
  REQUIRE(wedge.size() == 2);
  CHECK(tv::in_cone(wedge, qvi({1, 0})));
  CHECK(tv::in_cone(wedge, qvi({1, 1})));
  CHECK_FALSE(tv::in_cone(wedge, qvi({0, 1})));
}
