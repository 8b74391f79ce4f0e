#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qk/degree_enumeration.hpp"
#include "qk/root_system.hpp"

using namespace qk;

namespace {
CorootVector cv(std::initializer_list<int> v) {
  CorootVector d(static_cast<int>(v.size()));
  int i = 0;
  for (int x : v) d(i++) = x;
  return d;
}
}  // namespace

TEST_CASE("objective values on the line") {
  RootSystem a1({Family::A, 1});
  ProductSpec one(a1, {1}, Variant::GENERAL);
  CHECK(objective(one, cv({0})) == 0);
  CHECK(objective(one, cv({1})) == -1);  // 1 - 1 - 1

  ProductSpec three(a1, {1, 1, 1}, Variant::GENERAL);
  CHECK(objective(three, cv({1})) == 1);  // 3 - 1 - 1
  CHECK(objective(three, cv({2})) == 1);  // 6 - 1 - 4
  CHECK(objective(three, cv({3})) == -1);
}

TEST_CASE("admissible degree ground truths") {
  RootSystem a1({Family::A, 1});
  {
    auto set = admissible_degrees(ProductSpec(a1, {1}, Variant::GENERAL));
    REQUIRE(set.degrees.size() == 1);
    CHECK(set.degrees[0] == cv({0}));
    CHECK(set.values[0] == 0);
  }
  {
    auto set = admissible_degrees(ProductSpec(a1, {1, 1}, Variant::GENERAL));
    REQUIRE(set.degrees.size() == 2);
    CHECK(set.degrees[1] == cv({1}));
  }
  {
    auto set = admissible_degrees(ProductSpec(a1, {1, 1, 1}, Variant::GENERAL));
    REQUIRE(set.degrees.size() == 3);
    CHECK(set.degrees[2] == cv({2}));
    CHECK(set.values[2] == 1);
  }
}

TEST_CASE("distinct indices over simply laced types only reach degree zero") {
  for (RootSystemType t : {RootSystemType{Family::A, 3}, {Family::D, 4}, {Family::E, 6}}) {
    RootSystem sys(t);
    std::vector<int> all;
    for (int i = 1; i <= sys.rank(); ++i) all.push_back(i);
    auto set = admissible_degrees(ProductSpec(sys, all, Variant::SIMPLY_LACED_DISTINCT));
    REQUIRE(set.degrees.size() == 1);
    CHECK(set.degrees[0].isZero());
  }
}

TEST_CASE("variant preconditions") {
  RootSystem b2({Family::B, 2});
  CHECK_THROWS_AS(ProductSpec(b2, {1, 2}, Variant::SIMPLY_LACED_DISTINCT), std::invalid_argument);
  RootSystem a2({Family::A, 2});
  CHECK_THROWS_AS(ProductSpec(a2, {1, 1}, Variant::SIMPLY_LACED_DISTINCT), std::invalid_argument);
  CHECK_THROWS_AS(ProductSpec(a2, {0}, Variant::GENERAL), std::out_of_range);
  CHECK_THROWS_AS(ProductSpec(a2, {3}, Variant::GENERAL), std::out_of_range);
}

TEST_CASE("sublevel enumeration in one variable") {
  MatR gram(1, 1);
  gram << Rational(2);
  VecR linear(1);
  linear << Rational(3);
  // 3d - d^2 >= 0 on integers: d = 0..3.
  auto degs = enumerate_sublevel(gram, linear, Rational(0));
  REQUIRE(degs.size() == 4);
  CHECK(degs[3] == cv({3}));
}

TEST_CASE("sublevel enumeration rejects indefinite forms") {
  MatR gram(2, 2);
  gram << Rational(1), Rational(2), Rational(2), Rational(1);
  VecR linear = VecR::Zero(2);
  CHECK_THROWS_AS(enumerate_sublevel(gram, linear, Rational(0)), std::invalid_argument);
}

TEST_CASE("enumerator agrees with the box oracle on fixed specs") {
  for (RootSystemType t : {RootSystemType{Family::A, 2}, {Family::B, 2}, {Family::G, 2}}) {
    RootSystem sys(t);
    ProductSpec spec(sys, {1, 1, 2, 2}, Variant::GENERAL);
    auto fast = admissible_degrees(spec);
    auto slow = box_scan_admissible(spec);
    REQUIRE(fast.degrees.size() == slow.degrees.size());
    for (size_t k = 0; k < fast.degrees.size(); ++k) {
      CHECK(fast.degrees[k] == slow.degrees[k]);
      CHECK(fast.values[k] == slow.values[k]);
    }
  }
}

TEST_CASE("degree sets come back in graded lexicographic order") {
  RootSystem a2({Family::A, 2});
  auto set = admissible_degrees(ProductSpec(a2, {1, 1, 2, 2}, Variant::GENERAL));
  REQUIRE(set.degrees.size() >= 2);
  CHECK(set.degrees[0].isZero());
  for (size_t k = 1; k < set.degrees.size(); ++k) {
    long long prev = set.degrees[k - 1].sum(), cur = set.degrees[k].sum();
    bool ordered = prev < cur;
    if (prev == cur) {
      ordered = std::lexicographical_compare(
          set.degrees[k - 1].data(), set.degrees[k - 1].data() + set.degrees[k - 1].size(),
          set.degrees[k].data(), set.degrees[k].data() + set.degrees[k].size());
    }
    CHECK(ordered);
  }
}

TEST_CASE("lift tables restrict the domain and lift before evaluating") {
  RootSystem a2({Family::A, 2});
  ProductSpec spec(a2, {2, 2}, Variant::GENERAL);
  // Keys live on the base; slot 1 is the proper direction being forgotten.
  LiftMap lift(std::map<std::vector<int>, std::vector<int>>{
      {{0, 0}, {0, 0}}, {{0, 1}, {1, 1}}, {{0, 2}, {2, 2}}});
  CHECK(lift.proper_indices() == std::vector<int>{1});
  CHECK(lift.apply(cv({0, 1})) == cv({1, 1}));
  CHECK_THROWS_AS(lift.apply(cv({1, 0})), std::out_of_range);

  auto set = admissible_degrees(spec, lift);
  // objective(lift(0,1)) = 2 - 2 - 1 < 0, so only zero survives.
  REQUIRE(set.degrees.size() == 1);
  CHECK(set.degrees[0].isZero());

  auto report = degree_bound_report(spec, lift);
  CHECK(report.max_total_degree == 0);
}

TEST_CASE("lift table validation") {
  using Table = std::map<std::vector<int>, std::vector<int>>;
  CHECK_THROWS_AS(LiftMap(Table{{{0, 0}, {0}}}), std::invalid_argument);         // rank mismatch
  CHECK_THROWS_AS(LiftMap(Table{{{0, 0}, {0, -1}}}), std::invalid_argument);     // not effective
  CHECK(LiftMap{}.identity());
  CHECK(LiftMap{}.apply(cv({3, 4})) == cv({3, 4}));
}

TEST_CASE("oracle radius is a certified bound") {
  RootSystem a2({Family::A, 2});
  ProductSpec spec(a2, {1, 1, 2}, Variant::GENERAL);
  long long radius = oracle_box_radius(spec);
  CHECK(radius >= 1);
  auto set = admissible_degrees(spec);
  for (const auto& d : set.degrees)
    for (int i = 0; i < d.size(); ++i) CHECK(d(i) <= radius);
}

TEST_CASE("bound report exposes the maximal total degree") {
  RootSystem a1({Family::A, 1});
  auto report = degree_bound_report(ProductSpec(a1, {1, 1, 1}, Variant::GENERAL));
  CHECK(report.max_total_degree == 2);
  CHECK(report.set.degrees.size() == 3);
}
