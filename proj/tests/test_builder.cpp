#include <doctest.h>

#include "interp_builder.hpp"

using namespace sbp;

TEST_CASE("p=2 reproduces the published table exactly") {
  BuildResult res = build_interp(2, 2, 2, {1, 3, 1}, 10, 1.0);
  const auto& pr = res.pair;
  CHECK(pr.f2c_q(0, 0) == Rat(11, 20));
  CHECK(pr.f2c_q(0, 1) == Rat(1, 2));
  CHECK(pr.f2c_q(0, 2) == Rat(-1, 20));
  CHECK(pr.f2c_q(1, 0) == Rat(-1, 40));
  CHECK(pr.f2c_q(1, 1) == Rat(1, 4));
  CHECK(pr.f2c_q(1, 2) == Rat(11, 20));
  CHECK(res.free_params_used == 1);
  // the built pair equals the table-loaded pair entrywise
  auto tab = load_interp_pair(InterpKind::P2, 10, 1.0);
  CHECK(pr.f2c_q == tab.f2c_q);
  CHECK(pr.c2f_q == tab.c2f_q);
}

TEST_CASE("p=4 satisfies the construction contracts (and in fact matches the paper)") {
  BuildResult res = build_interp(4, 4, 4, {3, 11, 2}, 13, 1.0);
  auto ver1 = verify_sbp_preserving(res.pair);
  CHECK(ver1.exact_zero);
  auto ver2 = verify_accuracy(res.pair);
  CHECK(ver2.pass);
  CHECK(ver2.max_residual <= 1e-10);
  // interior stencil values printed in the tables
  auto tab = load_interp_pair(InterpKind::P4, 13, 1.0);
  CHECK(res.pair.f2c_q == tab.f2c_q);
}

TEST_CASE("p=1 ratio-1 conforming build yields the identity with zero residual") {
  BuildResult res = build_interp(1, 0, 0, {1, 1, 0}, 8, 1.0, 1);
  CHECK(res.pair.f2c_q == RatMat::identity(9));
  CHECK(res.pair.c2f_q == RatMat::identity(9));
  CHECK(res.residual_norm == 0.0);
}

TEST_CASE("determinism: identical inputs give identical coefficients") {
  BuildResult a = build_interp(4, 4, 4, {3, 11, 2}, 12, 1.0);
  BuildResult b = build_interp(4, 4, 4, {3, 11, 2}, 12, 1.0);
  CHECK(a.pair.f2c_q == b.pair.f2c_q);
  CHECK(a.free_params_used == b.free_params_used);
}

TEST_CASE("built pairs pass the verifications at other sizes too") {
  BuildResult res = build_interp(2, 2, 2, {1, 3, 1}, 24, 0.25);
  CHECK(verify_sbp_preserving(res.pair).exact_zero);
  CHECK(verify_accuracy(res.pair).pass);
  CHECK(*check_inter2(res.pair).psd_min_eigenvalue >= -1e-12);
}

TEST_CASE("infeasible shapes are reported") {
  // too few boundary columns to meet the accuracy conditions
  CHECK_THROWS(build_interp(4, 4, 4, {1, 3, 2}, 13, 1.0));
  CHECK_THROWS_AS(build_interp(4, 4, 4, {0, 3, 1}, 13, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(build_interp(2, 2, 2, {1, 2, 1}, 10, 1.0), std::invalid_argument);  // r < 2s+1
}

TEST_CASE("hybrid norms: the 4:2 build passes its verifications") {
  BuildResult res = build_interp(2, 4, 2, {3, 11, 2}, 13, 1.0);
  CHECK(verify_sbp_preserving(res.pair).exact_zero);
  CHECK(verify_accuracy(res.pair).pass);
}
