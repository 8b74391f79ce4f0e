#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qk/linalg.hpp"
#include "qk/root_system.hpp"

using namespace qk;

namespace {
Eigen::MatrixXi mat(std::initializer_list<std::initializer_list<int>> rows) {
  Eigen::MatrixXi m(static_cast<int>(rows.size()), static_cast<int>(rows.begin()->size()));
  int i = 0;
  for (const auto& r : rows) {
    int j = 0;
    for (int v : r) m(i, j++) = v;
    ++i;
  }
  return m;
}
}  // namespace

TEST_CASE("simply laced gram matrices are twice the Cartan matrix") {
  RootSystem a2({Family::A, 2});
  CHECK(a2.gram() == mat({{2, -1}, {-1, 2}}));
  CHECK(a2.cartan() == a2.gram());

  RootSystem d4({Family::D, 4});
  // Fork at node 2: edges 1-2, 2-3, 2-4.
  CHECK(d4.gram() == mat({{2, -1, 0, 0}, {-1, 2, -1, -1}, {0, -1, 2, 0}, {0, -1, 0, 2}}));
}

TEST_CASE("non simply laced gram matrices keep short roots at norm 2") {
  RootSystem b3({Family::B, 3});
  CHECK(b3.gram() == mat({{4, -2, 0}, {-2, 4, -2}, {0, -2, 2}}));
  RootSystem c3({Family::C, 3});
  CHECK(c3.gram() == mat({{2, -1, 0}, {-1, 2, -2}, {0, -2, 4}}));
  RootSystem f4({Family::F, 4});
  CHECK(f4.gram() == mat({{4, -2, 0, 0}, {-2, 4, -2, 0}, {0, -2, 2, -1}, {0, 0, -1, 2}}));
  RootSystem g2({Family::G, 2});
  CHECK(g2.gram() == mat({{6, -3}, {-3, 2}}));
  // cartan_ij = 2 gram_ij / gram_ii, integral by construction.
  CHECK(g2.cartan() == mat({{2, -1}, {-3, 2}}));
  CHECK(b3.cartan() == mat({{2, -1, 0}, {-1, 2, -1}, {0, -2, 2}}));
}

TEST_CASE("gram determinants match the classical index values") {
  auto det = [](RootSystemType t) { return determinant<Rational>(to_rational(RootSystem(t).gram())); };
  CHECK(det({Family::A, 5}) == 6);
  CHECK(det({Family::B, 6}) == 64);
  CHECK(det({Family::C, 7}) == 4);
  CHECK(det({Family::D, 8}) == 4);
  CHECK(det({Family::E, 6}) == 3);
  CHECK(det({Family::E, 7}) == 2);
  CHECK(det({Family::E, 8}) == 1);
  CHECK(det({Family::F, 4}) == 4);
  CHECK(det({Family::G, 2}) == 3);
}

TEST_CASE("invalid types are rejected") {
  CHECK_THROWS_AS(RootSystem({Family::D, 2}), std::invalid_argument);
  CHECK_THROWS_AS(RootSystem({Family::E, 9}), std::invalid_argument);
  CHECK_THROWS_AS(RootSystem({Family::G, 3}), std::invalid_argument);
  CHECK_THROWS_AS(RootSystem({Family::A, 0}), std::invalid_argument);
  CHECK_THROWS_AS(family_from_char('Z'), std::invalid_argument);
}

TEST_CASE("products are block diagonal") {
  RootSystem prod({{Family::A, 1}, {Family::B, 2}});
  CHECK(prod.rank() == 3);
  CHECK(prod.gram() == mat({{2, 0, 0}, {0, 4, -2}, {0, -2, 2}}));
  CHECK(!prod.simple());
  CHECK(prod.has_E8_factor() == false);
  CHECK(RootSystem({{Family::A, 2}, {Family::E, 8}}).has_E8_factor());
}

TEST_CASE("pairing, norm, and support size") {
  RootSystem a2({Family::A, 2});
  CorootVector d(2);
  d << 2, 1;
  CHECK(norm(a2, d) == 2 * 4 - 2 * 2 * 1 + 2 * 1);  // d^T gram d
  CHECK(support_size(d) == 2);
  WeightVector lambda = rho(a2);
  CHECK(pairing(d, lambda) == 3);
  CHECK(m_exponent(a2, d) == support_size(d) + norm(a2, d) / 2);
  CHECK(k_exponent(a2, d) == pairing(d, rho(a2)) + norm(a2, d) / 2);

  CorootVector zero = CorootVector::Zero(2);
  CHECK(support_size(zero) == 0);
  CHECK(m_exponent(a2, zero) == 0);
}

TEST_CASE("rank one exponents are quadratic in the degree") {
  RootSystem a1({Family::A, 1});
  for (int d = 0; d <= 12; ++d) {
    CorootVector v(1);
    v << d;
    CHECK(k_exponent(a1, v) == d + static_cast<long long>(d) * d);
    CHECK(m_exponent(a1, v) == (d > 0 ? 1 : 0) + static_cast<long long>(d) * d);
  }
}

TEST_CASE("k exponent rejects non simply laced input") {
  RootSystem b2({Family::B, 2});
  CorootVector d(2);
  d << 1, 1;
  CHECK_THROWS_AS(k_exponent(b2, d), std::invalid_argument);
}

TEST_CASE("symmetrizer recovers gram from cartan") {
  for (RootSystemType t : {RootSystemType{Family::B, 4}, {Family::C, 5}, {Family::F, 4},
                           {Family::G, 2}, {Family::E, 6}}) {
    RootSystem sys(t);
    VecR d = sys.symmetrizer();
    MatR g = to_rational(sys.gram());
    MatR c = to_rational(sys.cartan());
    for (int i = 0; i < sys.rank(); ++i)
      for (int j = 0; j < sys.rank(); ++j) CHECK(g(i, j) == d(i) * c(i, j));
  }
}
