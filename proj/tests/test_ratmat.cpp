#include <doctest.h>

#include "ratmat.hpp"

using namespace sbp;

TEST_CASE("rational parsing round-trips") {
  Rat q = rat_from_string("-704697674731763751811223/97338960819557225222259840");
  CHECK(rat_to_string(q) == "-704697674731763751811223/97338960819557225222259840");
  CHECK(rat_from_string("4/8") == Rat(1, 2));
  CHECK_THROWS(rat_from_string("1/0x"));
}

TEST_CASE("solve_linear_system: unique, underdetermined, inconsistent") {
  RatMat A(2, 2);
  A(0, 0) = 1;
  A(0, 1) = 2;
  A(1, 0) = 3;
  A(1, 1) = 4;
  auto sp = solve_linear_system(A, {Rat(5), Rat(6)});
  CHECK(sp.dim() == 0);
  CHECK(sp.x0[0] == Rat(-4));
  CHECK(sp.x0[1] == Rat(9, 2));

  RatMat B(1, 3);
  B(0, 0) = 1;
  B(0, 1) = 1;
  B(0, 2) = 1;
  auto sp2 = solve_linear_system(B, {Rat(1)});
  CHECK(sp2.dim() == 2);

  RatMat C(2, 1);
  C(0, 0) = 1;
  C(1, 0) = 1;
  CHECK_THROWS(solve_linear_system(C, {Rat(0), Rat(1)}));
}

TEST_CASE("least_squares_restrict finds the exact minimizer") {
  // minimize (x-1)^2 + (x-3)^2 over free x: minimizer x = 2
  RatMat A(0, 1);
  AffineSpace sp = solve_linear_system(A, {});
  RatMat C(2, 1);
  C(0, 0) = 1;
  C(1, 0) = 1;
  auto out = least_squares_restrict(sp, C, {Rat(-1), Rat(-3)});
  CHECK(out.dim() == 0);
  CHECK(out.x0[0] == Rat(2));
}

TEST_CASE("psd_status classifies exactly") {
  RatMat P(2, 2);
  P(0, 0) = 2;
  P(0, 1) = 1;
  P(1, 0) = 1;
  P(1, 1) = 1;
  CHECK(psd_status(P) == 1);

  RatMat Z(2, 2);  // semidefinite with a zero eigenvalue
  Z(0, 0) = 1;
  Z(0, 1) = 1;
  Z(1, 0) = 1;
  Z(1, 1) = 1;
  CHECK(psd_status(Z) == 1);

  RatMat N(2, 2);  // indefinite
  N(0, 0) = 0;
  N(0, 1) = 1;
  N(1, 0) = 1;
  N(1, 1) = 0;
  CHECK(psd_status(N) == -1);
}

TEST_CASE("kron-free matrix ops") {
  RatMat I = RatMat::identity(3);
  RatMat A(3, 3);
  for (long i = 0; i < 3; ++i)
    for (long j = 0; j < 3; ++j) { Rat v(i + 2 * j + 1, j + 1); v.canonicalize(); A(i, j) = v; }
  CHECK((A * I) == A);
  CHECK(A.transpose().transpose() == A);
}
