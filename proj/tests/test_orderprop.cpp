#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qk/json_io.hpp"
#include "qk/order_propagation.hpp"
#include "qk/quad_field.hpp"

using namespace qk;

namespace {
Eigen::VectorXi iv(std::initializer_list<int> v) {
  Eigen::VectorXi x(static_cast<int>(v.size()));
  int i = 0;
  for (int a : v) x(i++) = a;
  return x;
}

EffLattice line_lattice() { return EffLattice(1, {iv({1})}); }

RationalQ inv_one_minus_q() {
  return RationalQ(Rational(1)) / RationalQ(Poly(std::vector<Rational>{Rational(1), Rational(-1)}));
}

MatQ scalar_matq(const RationalQ& v) {
  MatQ m(1, 1);
  m(0, 0) = v;
  return m;
}
}  // namespace

// ---- quadratic extension scalars --------------------------------------------

TEST_CASE("quadratic extension arithmetic and exact signs") {
  QuadExt r2(Rational(0), Rational(1), BigInt(2));
  CHECK((r2 * r2) == QuadExt(Rational(2)));
  QuadExt x(Rational(1), Rational(1), BigInt(2));  // 1 + sqrt(2)
  CHECK((x * QuadExt(Rational(1), Rational(-1), BigInt(2))) == QuadExt(Rational(-1)));
  CHECK(x / x == QuadExt(Rational(1)));
  CHECK((x - x).sign() == 0);

  CHECK(QuadExt(Rational(3), Rational(-2), BigInt(2)).sign() == 1);   // 9 > 8
  CHECK(QuadExt(Rational(2), Rational(-2), BigInt(2)).sign() == -1);  // 4 < 8
  CHECK(QuadExt(Rational(-3), Rational(2), BigInt(2)).sign() == -1);
  CHECK(r2 > QuadExt(Rational(7, 5)));
  CHECK(r2 < QuadExt(Rational(3, 2)));
  CHECK(min(r2, QuadExt(Rational(3, 2))) == r2);
}

TEST_CASE("perfect square radicands collapse to rationals") {
  QuadExt x(Rational(1), Rational(2), BigInt(9));
  CHECK(x.is_rational());
  CHECK(x == QuadExt(Rational(7)));
  CHECK(QuadExt(Rational(0), Rational(1), BigInt(0)) == QuadExt(Rational(0)));
  CHECK_THROWS_AS(QuadExt(Rational(1), Rational(1), BigInt(-2)), std::invalid_argument);
  // Distinct irrational radicands cannot be combined.
  CHECK_THROWS(QuadExt(Rational(0), Rational(1), BigInt(2)) +
               QuadExt(Rational(0), Rational(1), BigInt(3)));
}

// ---- lattice and series primitives -------------------------------------------

TEST_CASE("lattice functionals must cover every coordinate") {
  CHECK_THROWS_AS(EffLattice(2, {iv({1, 0})}), std::invalid_argument);
  CHECK_THROWS_AS(EffLattice(1, {iv({-1})}), std::invalid_argument);
  CHECK_THROWS_AS(EffLattice(1, {}), std::invalid_argument);
  EffLattice lat(2, {iv({1, 0}), iv({1, 1})});
  CHECK(lat.k() == 2);
  CHECK(lat.pair(1, {2, 3}) == 5);
  CHECK(lat.max_pairing({2, 3}) == 5);
}

TEST_CASE("box degrees come out graded") {
  Box box({2, 2});
  auto degs = box.graded_degrees();
  REQUIRE(degs.size() == 9);
  CHECK(degs.front() == MultiDegree{0, 0});
  CHECK(degs.back() == MultiDegree{2, 2});
  for (size_t i = 1; i < degs.size(); ++i)
    CHECK(total_degree(degs[i - 1]) <= total_degree(degs[i]));
  CHECK_THROWS(Box({-1}));
}

TEST_CASE("geometric series inversion") {
  Box box({4});
  NovikovSeries t = NovikovSeries::identity(box, 1);
  t.set_coeff({1}, scalar_matq(RationalQ(Rational(-1))));  // 1 - Q
  NovikovSeries s = t.invert();
  for (int d = 0; d <= 4; ++d) CHECK(s.coeff({d})(0, 0) == RationalQ(Rational(1)));
  CHECK(t * s == NovikovSeries::identity(box, 1));
  CHECK(s * t == NovikovSeries::identity(box, 1));
  CHECK(s.invert() == t);
}

TEST_CASE("inversion squares single degree one coefficients") {
  Box box({2});
  NovikovSeries t = NovikovSeries::identity(box, 2);
  MatQ m = matq_zero(2);
  m(0, 1) = RationalQ(Rational(3));
  m(1, 0) = RationalQ(Rational(1));
  t.set_coeff({1}, m);
  NovikovSeries s = t.invert();
  CHECK(s.coeff({1}) == -m);  // actually -m entrywise
  CHECK(s.coeff({2}) == matq_mul(m, m));
  CHECK(t * s == NovikovSeries::identity(box, 2));
}

TEST_CASE("q dilation multiplies coefficients by q to the pairing") {
  Box box({2});
  NovikovSeries t = NovikovSeries::identity(box, 1);
  t.set_coeff({1}, scalar_matq(RationalQ(Rational(1))));
  NovikovSeries same = t.q_dilate(iv({0}));
  CHECK(same == t);
  NovikovSeries shifted = t.q_dilate(iv({2}));
  CHECK(shifted.coeff({1})(0, 0) == RationalQ(Poly::monomial(2)));
  CHECK(shifted.coeff({0})(0, 0) == RationalQ(Rational(1)));
}

TEST_CASE("series support respects truncation") {
  Box box({1, 1});
  NovikovSeries t = NovikovSeries::identity(box, 1);
  CHECK_THROWS(t.set_coeff({2, 0}, scalar_matq(RationalQ(Rational(1)))));
  t.set_coeff({1, 1}, scalar_matq(RationalQ(Rational(5))));
  CHECK(t.support() == std::vector<MultiDegree>{{0, 0}, {1, 1}});
  t.set_coeff({1, 1}, matq_zero(1));  // zero coefficients are erased
  CHECK(t.support() == std::vector<MultiDegree>{{0, 0}});
}

// ---- order propagation --------------------------------------------------------

TEST_CASE("propagated bounds match the closed form for unit steps") {
  EffLattice lat = line_lattice();
  Box box({12});
  auto table = propagate_lower_bounds({{1}}, Rational(0), lat, box);
  for (int d = 0; d <= 12; ++d)
    CHECK(table.at({d}) == Extended<Rational>(Rational(d) * Rational(d + 1) / 2));
}

TEST_CASE("degrees unreachable by the support are forced to vanish") {
  EffLattice lat = line_lattice();
  Box box({5});
  auto table = propagate_lower_bounds({{2}}, Rational(0), lat, box);
  CHECK(table.at({0}) == Extended<Rational>(Rational(0)));
  CHECK(table.at({1}).is_infinite());
  CHECK(table.at({2}) == Extended<Rational>(Rational(2)));
  CHECK(table.at({3}).is_infinite());
  CHECK(table.at({4}) == Extended<Rational>(Rational(6)));  // 4 + L(2)
  CHECK_THROWS(table.at({6}));
}

TEST_CASE("bounds are monotone in the support set and the floor") {
  EffLattice lat = line_lattice();
  Box box({10});
  auto small = propagate_lower_bounds({{1}}, Rational(0), lat, box);
  auto large = propagate_lower_bounds({{1}, {2}}, Rational(0), lat, box);
  auto lowered = propagate_lower_bounds({{1}}, Rational(-1), lat, box);
  for (int d = 0; d <= 10; ++d) {
    CHECK(large.at({d}) <= small.at({d}));    // more moves can only help
    CHECK(lowered.at({d}) <= small.at({d}));  // smaller floor lowers the bound
    CHECK(lowered.at({d}) ==
          Extended<Rational>(Rational(d) * Rational(d - 1) / 2));
  }
}

TEST_CASE("two variable propagation with coordinate functionals") {
  EffLattice lat(2, {iv({1, 0}), iv({0, 1})});
  Box box({2, 2});
  auto table = propagate_lower_bounds({{1, 0}, {0, 1}}, Rational(0), lat, box);
  CHECK(table.at({0, 0}) == Extended<Rational>(Rational(0)));
  CHECK(table.at({1, 1}) == Extended<Rational>(Rational(2)));
  CHECK(table.at({2, 2}) == Extended<Rational>(Rational(6)));
}

TEST_CASE("support set validation") {
  EffLattice lat = line_lattice();
  Box box({3});
  CHECK_THROWS_AS(propagate_lower_bounds({{0}}, Rational(0), lat, box), std::invalid_argument);
  CHECK_THROWS_AS(propagate_lower_bounds({{-1}}, Rational(0), lat, box), std::invalid_argument);
  CHECK_THROWS_AS(propagate_lower_bounds({{1, 1}}, Rational(0), lat, box), std::invalid_argument);
}

// ---- certificates --------------------------------------------------------------

TEST_CASE("rational certificates evaluate the quadratic bound exactly") {
  MatR gram(1, 1);
  gram << Rational(1);
  VecR m(1);
  m << Rational(-1);
  GrowthCertificate cert = rational_certificate(gram, m, Rational(0));
  CHECK(cert.positive_definite());
  CHECK(cert.bound({2}) == QuadExt(Rational(0)));
  CHECK(cert.bound({4}) == QuadExt(Rational(4)));
  CHECK(cert.gram_entry(0, 0) == QuadExt(Rational(1)));
}

TEST_CASE("constructed certificates carry the expected gram data") {
  EffLattice lat = line_lattice();
  {
    auto cert = construct_certificate({{1}}, Rational(0), lat, Box({20}));
    CHECK(cert.N == 1);
    CHECK(cert.gram_rational(0, 0) == 1);
    CHECK(cert.gram_root(0, 0) == 0);
    CHECK(cert.m(0) == 0);
    CHECK(cert.c == 0);
  }
  {
    // B^2 = 4, N = 4 is a perfect square, so the gram entry 1/sqrt(4) is rational.
    auto cert = construct_certificate({{1}, {2}}, Rational(0), lat, Box({20}));
    CHECK(cert.N == 1);
    CHECK(cert.gram_rational(0, 0) == Rational(1, 2));
    CHECK(cert.bound({6}) == QuadExt(Rational(9)));
  }
  {
    auto cert = construct_certificate({{1}}, Rational(-1), lat, Box({20}));
    CHECK(cert.m(0) == -1);
    CHECK(cert.bound({1}) == QuadExt(Rational(-1, 2)));
  }
  {
    EffLattice lat2(2, {iv({1, 0}), iv({0, 1})});
    auto cert = construct_certificate({{1, 0}, {0, 1}}, Rational(0), lat2, Box({6, 6}));
    CHECK(cert.N == 2);  // k B^2 = 2, irrational
    CHECK(cert.gram_root(0, 0) == Rational(1, 2));
    CHECK(cert.gram_root(1, 0) == 0);
    CHECK(cert.positive_definite());
  }
}

TEST_CASE("certificate construction rejects non spanning functionals") {
  // Both functionals vanish on (1, -1): P^T P is singular even though the
  // effective cone is covered.
  EffLattice lat(2, {iv({1, 1}), iv({2, 2})});
  CHECK_THROWS_AS(construct_certificate({{1, 0}}, Rational(0), lat, Box({4, 4})),
                  std::invalid_argument);
}

TEST_CASE("quadratic growth check against synthetic solutions") {
  EffLattice lat = line_lattice();
  Box box({6});
  OrderProfile profile;
  profile.gram = MatR::Zero(1, 1);
  profile.gram(0, 0) = 2;  // profile(d) = d^2
  profile.m = VecR::Zero(1);
  profile.c = 0;
  auto fs = generate_synthetic_T(lat, 2, profile, 99u, box);
  validate_fundamental_solution(fs);

  MatR gram_ok(1, 1), gram_bad(1, 1);
  gram_ok << Rational(2);
  gram_bad << Rational(4);
  CHECK(check_quadratic_growth(fs, rational_certificate(gram_ok, VecR::Zero(1), Rational(0)), box));
  MultiDegree witness;
  CHECK_FALSE(check_quadratic_growth(fs, rational_certificate(gram_bad, VecR::Zero(1), Rational(0)),
                                     box, &witness));
  CHECK(witness == MultiDegree{1});  // ord = 1 < bound 2 already at degree one
}

TEST_CASE("synthetic solutions are deterministic in the seed") {
  EffLattice lat(2, {iv({1, 1}), iv({0, 1})});
  Box box({3, 3});
  OrderProfile profile;
  profile.gram = MatR::Zero(2, 2);
  profile.gram(0, 0) = 2;
  profile.gram(1, 1) = 2;
  profile.m = VecR::Zero(2);
  profile.m(0) = 1;
  profile.m(1) = 1;
  profile.c = 0;
  auto a = generate_synthetic_T(lat, 2, profile, 5u, box);
  auto b = generate_synthetic_T(lat, 2, profile, 5u, box);
  CHECK(a.coeffs == b.coeffs);
  auto c = generate_synthetic_T(lat, 2, profile, 6u, box);
  CHECK(a.coeffs.trunc().cap == c.coeffs.trunc().cap);

  // Orders match the profile exactly on every nonzero entry.
  for (const auto& d : box.graded_degrees()) {
    if (total_degree(d) == 0) continue;
    Order got = matq_min_order(a.coeffs.coeff(d));
    REQUIRE(!got.is_infinite());
    Rational want = profile(d);
    CHECK(Rational(got.finite()) >= want);
  }
}

TEST_CASE("profiles below one are rejected by the generator") {
  EffLattice lat = line_lattice();
  OrderProfile profile;
  profile.gram = MatR::Zero(1, 1);
  profile.m = VecR::Zero(1);
  profile.c = 0;  // profile(d) = 0 < 1
  CHECK_THROWS_AS(generate_synthetic_T(lat, 1, profile, 1u, Box({3})), std::invalid_argument);
}

// ---- shift connections ----------------------------------------------------------

TEST_CASE("the identity solution has connection equal to the pairing matrix") {
  EffLattice lat = line_lattice();
  Box box({3});
  FundamentalSolution fs{lat, NovikovSeries::identity(box, 2)};
  MatR P(2, 2);
  P << Rational(2), Rational(0), Rational(1), Rational(3);
  auto conn = shift_connection(fs, P, iv({1}));
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) CHECK(conn.A.coeff({0})(r, c) == RationalQ(P(r, c)));
  for (int d = 1; d <= 3; ++d) CHECK(conn.A.coeff_is_zero({d}));
}

TEST_CASE("rank one shift connection computed by hand") {
  // T = 1 + Q/(1-q): A_0 = 1, A_1 = -1, A_2 = 1/(1-q), A_3 = -1/(1-q)^2.
  EffLattice lat = line_lattice();
  Box box({3});
  RationalQ x = inv_one_minus_q();
  NovikovSeries t = NovikovSeries::identity(box, 1);
  t.set_coeff({1}, scalar_matq(x));
  FundamentalSolution fs{lat, t};
  validate_fundamental_solution(fs);

  MatR P = MatR::Identity(1, 1);
  auto conn = shift_connection(fs, P, iv({1}));
  CHECK(conn.A.coeff({0})(0, 0) == RationalQ(Rational(1)));
  CHECK(conn.A.coeff({1})(0, 0) == RationalQ(Rational(-1)));
  CHECK(conn.A.coeff({2})(0, 0) == x);
  CHECK(conn.A.coeff({3})(0, 0) == -(x * x));

  // The defining identity P q-dilate(T) = T A holds within the truncation.
  MatQ pq(1, 1);
  pq(0, 0) = RationalQ(Rational(1));
  CHECK(fs.coeffs.q_dilate(iv({1})).left_mul(pq) == fs.coeffs * conn.A);
}

TEST_CASE("difference module instances have polynomial connections") {
  EffLattice lat(2, {iv({1, 0}), iv({0, 1})});
  Box box({4, 4});
  auto inst = generate_difference_module_T(lat, 2, 321u, box);
  validate_fundamental_solution(inst.T);
  REQUIRE(inst.connections.size() == 2);
  REQUIRE(!inst.F.empty());

  for (const auto& conn : inst.connections) {
    for (const auto& d : conn.A.support()) {
      MatQ m = conn.A.coeff(d);
      for (Eigen::Index r = 0; r < m.rows(); ++r)
        for (Eigen::Index c = 0; c < m.cols(); ++c)
          CHECK(m(r, c).den() == Poly(Rational(1)));  // polynomial in q
    }
  }
  // C is the least order over the declared support, so every support entry of
  // every connection sits at or above it.
  for (const auto& conn : inst.connections)
    for (const auto& d : conn.A.support()) {
      if (total_degree(d) == 0) continue;
      Order o = matq_min_order(conn.A.coeff(d));
      REQUIRE(!o.is_infinite());
      CHECK(Rational(o.finite()) >= inst.C);
    }
}

TEST_CASE("difference module generation is deterministic") {
  EffLattice lat = line_lattice();
  Box box({6});
  auto a = generate_difference_module_T(lat, 3, 77u, box);
  auto b = generate_difference_module_T(lat, 3, 77u, box);
  CHECK(a.T.coeffs == b.T.coeffs);
  CHECK(a.F == b.F);
  CHECK(a.C == b.C);
  REQUIRE(a.connections.size() == b.connections.size());
  for (size_t i = 0; i < a.connections.size(); ++i)
    CHECK(a.connections[i].A == b.connections[i].A);
}

TEST_CASE("vanishing estimates separate reachable from forced zero degrees") {
  EffLattice lat = line_lattice();
  Box box({6});
  auto cert = construct_certificate({{1}}, Rational(0), lat, box);
  auto est = vanishing_estimate(cert, lat, 0, box);
  CHECK(est.at({0}) == Extended<QuadExt>(QuadExt(Rational(0))));
  CHECK(est.at({1}) == Extended<QuadExt>(QuadExt(Rational(-1, 2))));
  REQUIRE(est.count(std::vector<int>{3}) == 1);
  CHECK(!est.at({3}).is_infinite());
  CHECK(est.at({3}).finite().sign() > 0);  // beyond the support: forced zero
  CHECK(est.at({6}).finite().sign() > 0);
}

TEST_CASE("fundamental solution validation flags each invariant") {
  EffLattice lat = line_lattice();
  Box box({2});
  {
    NovikovSeries t(box, 1);  // T_0 = 0, not the identity
    FundamentalSolution fs{lat, t};
    CHECK_THROWS_AS(validate_fundamental_solution(fs), std::invalid_argument);
  }
  {
    NovikovSeries t = NovikovSeries::identity(box, 1);
    t.set_coeff({1}, scalar_matq(RationalQ(Poly::monomial(1))));  // order -1
    FundamentalSolution fs{lat, t};
    CHECK_THROWS_AS(validate_fundamental_solution(fs), std::invalid_argument);
  }
  {
    NovikovSeries t = NovikovSeries::identity(box, 1);
    // 1/(2 - q) has its pole away from the unit circle.
    t.set_coeff({1}, scalar_matq(RationalQ(Poly(Rational(1)),
                                           Poly(std::vector<Rational>{Rational(2), Rational(-1)}))));
    FundamentalSolution fs{lat, t};
    CHECK_THROWS_AS(validate_fundamental_solution(fs), std::invalid_argument);
  }
}

// ---- JSON round trips ------------------------------------------------------------

TEST_CASE("rational serialization round trips") {
  CHECK(rational_to_json(Rational(-3, 7)) == Json("-3/7"));
  CHECK(rational_to_json(Rational(5)) == Json("5"));
  CHECK(rational_from_json(Json("5")) == Rational(5));
  CHECK(rational_from_json(Json(-4)) == Rational(-4));
  CHECK(rational_from_json(Json("6/4")) == Rational(3, 2));
  CHECK_THROWS_AS(rational_from_json(Json("x")), SchemaError);
  CHECK_THROWS_AS(rational_from_json(Json(2.5)), SchemaError);
}

TEST_CASE("rational function serialization round trips") {
  RationalQ f = inv_one_minus_q().times_qpow(1) + RationalQ(Rational(2, 3));
  RationalQ back = rational_q_from_json(rational_q_to_json(f));
  CHECK(back == f);
  CHECK_THROWS_AS(rational_q_from_json(Json{{"num", Json::array({"1"})}}), SchemaError);
}

TEST_CASE("series serialization round trips with schema checks") {
  Box box({2, 1});
  NovikovSeries t = NovikovSeries::identity(box, 2);
  MatQ m = matq_zero(2);
  m(0, 0) = inv_one_minus_q();
  m(1, 1) = RationalQ(Rational(4));
  t.set_coeff({1, 1}, m);
  Json j = novikov_to_json(t);
  NovikovSeries back = novikov_from_json(j);
  CHECK(back == t);

  Json bad = j;
  bad["coeffs"]["9,9"] = bad["coeffs"]["1,1"];
  CHECK_THROWS_AS(novikov_from_json(bad), SchemaError);
  Json bad2 = j;
  bad2.erase("dim");
  CHECK_THROWS_AS(novikov_from_json(bad2), SchemaError);
}

TEST_CASE("lattice and profile serialization round trips") {
  EffLattice lat(2, {iv({1, 0}), iv({1, 1})});
  EffLattice back = lattice_from_json(lattice_to_json(lat));
  CHECK(back.s() == 2);
  CHECK(back.functionals() == lat.functionals());
  CHECK_THROWS_AS(lattice_from_json(Json{{"s", 2}, {"p", Json::array({Json::array({1, 0})})}}),
                  SchemaError);  // second coordinate uncovered

  OrderProfile pr;
  pr.gram = MatR::Zero(2, 2);
  pr.gram(0, 0) = Rational(2);
  pr.gram(1, 1) = Rational(1, 2);
  pr.m = VecR::Zero(2);
  pr.m(1) = Rational(-1, 3);
  pr.c = Rational(1, 6);
  OrderProfile pback = profile_from_json(profile_to_json(pr));
  CHECK(pback.gram == pr.gram);
  CHECK(pback.m == pr.m);
  CHECK(pback.c == pr.c);
  CHECK(pback({2, 2}) == pr({2, 2}));
}

TEST_CASE("certificate serialization preserves the radical part") {
  EffLattice lat(2, {iv({1, 0}), iv({0, 1})});
  auto cert = construct_certificate({{1, 0}, {0, 1}}, Rational(0), lat, Box({4, 4}));
  Json j = certificate_to_json(cert);
  CHECK(j.at("N") == Json("2"));
  GrowthCertificate back = certificate_from_json(j);
  CHECK(back.N == cert.N);
  CHECK(back.gram_root == cert.gram_root);
  CHECK(back.gram_rational == cert.gram_rational);
  CHECK(back.bound({3, 1}) == cert.bound({3, 1}));
  Json bad = j;
  bad["N"] = "q";
  CHECK_THROWS_AS(certificate_from_json(bad), SchemaError);
}

TEST_CASE("order tables serialize infinities") {
  EffLattice lat = line_lattice();
  auto table = propagate_lower_bounds({{2}}, Rational(0), lat, Box({3}));
  Json j = order_table_to_json(table);
  CHECK(j.at("1") == Json("inf"));
  CHECK(j.at("2") == Json("2"));
  CHECK(j.at("0") == Json("0"));
}

TEST_CASE("degree keys round trip") {
  CHECK(degree_key({1, 0, 4}) == "1,0,4");
  CHECK(degree_from_key("1,0,4") == MultiDegree{1, 0, 4});
  CHECK_THROWS_AS(degree_from_key("1,,2"), SchemaError);
  CHECK_THROWS_AS(degree_from_key("1,x"), SchemaError);
}

TEST_CASE("product specs parse from json with field diagnostics") {
  Json j{{"family", "A"}, {"rank", 1}, {"indices", Json::array({1, 1})}};
  ProductSpec spec = product_spec_from_json(j);
  CHECK(spec.indices == std::vector<int>{1, 1});
  CHECK(spec.variant == Variant::GENERAL);

  Json bad = j;
  bad["family"] = "Z";
  try {
    product_spec_from_json(bad);
    CHECK(false);
  } catch (const SchemaError& e) {
    CHECK(std::string(e.what()).find("$.family") != std::string::npos);
  }
  Json bad2 = j;
  bad2["variant"] = "fancy";
  CHECK_THROWS_AS(product_spec_from_json(bad2), SchemaError);

  Json lift = Json::array({Json::array({Json::array({0}), Json::array({0})})});
  LiftMap lm = lift_from_json(lift);
  CHECK(lm.table().size() == 1);
  Json dup = Json::array({Json::array({Json::array({0}), Json::array({0})}),
                          Json::array({Json::array({0}), Json::array({1})})});
  CHECK_THROWS_AS(lift_from_json(dup), SchemaError);
}
