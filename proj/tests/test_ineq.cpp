#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qk/bordered_form.hpp"
#include "qk/root_system.hpp"

using namespace qk;

TEST_CASE("bordered matrix layout and determinant identity") {
  RootSystem a1({Family::A, 1});
  auto b = make_bordered(a1, 1);
  Eigen::MatrixXi want(2, 2);
  want << 2, -1, -1, 2;
  CHECK(b.matrix_2AQ == want);
  // det_2AQ cross-checks elimination against the deletion identity internally.
  CHECK(det_2AQ(a1, 1) == 3);

  RootSystem a2({Family::A, 2});
  CHECK(det_2AQ(a2, 1) == 10);  // 2*2*3 - det([2])
  CHECK(det_2AQ(a2, 2) == 10);
}

TEST_CASE("positivity certificate lists every leading principal minor") {
  RootSystem b2({Family::B, 2});
  auto cert = is_positive_definite(to_rational(make_bordered(b2, 2).matrix_2AQ));
  CHECK(cert.minors.size() == 3);
  CHECK(cert.verdict);
  for (const auto& m : cert.minors) CHECK(m > 0);

  MatR indef(2, 2);
  indef << Rational(1), Rational(2), Rational(2), Rational(1);
  CHECK_FALSE(is_positive_definite(indef).verdict);
}

TEST_CASE("support subset sweep holds away from E8") {
  for (RootSystemType t : {RootSystemType{Family::A, 3}, {Family::B, 3}, {Family::C, 3},
                           {Family::D, 4}, {Family::G, 2}, {Family::F, 4}}) {
    RootSystem sys(t);
    for (int i = 1; i <= sys.rank(); ++i) CHECK(verify_lemma_appA(sys, i));
  }
}

TEST_CASE("E8 vertex determinants single out the fork") {
  RootSystem e8({Family::E, 8});
  auto dets = vertex_scan(e8);
  const long long want[8] = {12, 8, 2, -14, -4, 4, 10, 14};
  REQUIRE(dets.size() == 8);
  for (int i = 0; i < 8; ++i) CHECK(dets[static_cast<size_t>(i)] == want[i]);
  CHECK(det_2AQ(e8, 4) == -14);
  CHECK_FALSE(verify_lemma_appA(e8, 4));
}

TEST_CASE("brute force scan agrees with certificates on small boxes") {
  RootSystem a2({Family::A, 2});
  auto r = brute_force_inequality(a2, 1, 6);
  CHECK(r.holds);
  CHECK(!r.violating_d.has_value());

  RootSystem a1({Family::A, 1});
  CHECK(brute_force_inequality(a1, 1, 10).holds);  // d^2 + 1 > d for every d >= 1
}

TEST_CASE("the E8 fork direction is indefinite but has no small integer violator") {
  RootSystem e8({Family::E, 8});
  // No d in [0,6]^8 breaks the inequality at z = 1; the certificate failure
  // shows up first through the quadratic form itself.
  CHECK(brute_force_inequality(e8, 4, 6).holds);
  auto fv = form_violation_search(e8, 4, 6);
  REQUIRE(fv.has_value());
  CHECK(fv->value < 0);
  CHECK(fv->z_star > 0);
  long long di = fv->d(3);
  CHECK(di * di > 2LL * support_size(fv->d) * norm(e8, fv->d));

  // Integer violators of the z = 1 inequality exist once the box is enlarged.
  auto bf = brute_force_inequality(e8, 4, 10);
  REQUIRE(!bf.holds);
  REQUIRE(bf.violating_d.has_value());
  const CorootVector& d = *bf.violating_d;
  long long lhs = norm(e8, d) / 2 + support_size(d);
  CHECK((lhs < d(3) || (lhs == d(3) && support_size(d) > 0)));
}

TEST_CASE("bordering commutes with diagram symmetry") {
  // A3 flips 1 <-> 3; D4 permutes the outer nodes 1, 3, 4.
  RootSystem a3({Family::A, 3});
  CHECK(det_2AQ(a3, 1) == det_2AQ(a3, 3));
  CHECK(verify_lemma_appA(a3, 1) == verify_lemma_appA(a3, 3));
  RootSystem d4({Family::D, 4});
  CHECK(det_2AQ(d4, 1) == det_2AQ(d4, 3));
  CHECK(det_2AQ(d4, 3) == det_2AQ(d4, 4));
}

TEST_CASE("border index bounds are enforced") {
  RootSystem a2({Family::A, 2});
  CHECK_THROWS(make_bordered(a2, 0));
  CHECK_THROWS(make_bordered(a2, 3));
}
