#pragma once

#include <vector>

#include "qk/extended.hpp"
#include "qk/qpoly.hpp"

namespace qk {

// Exact rational function of q in canonical form: gcd(num, den) = 1 and den
// monic; the zero function is 0/1. The key observable is the order of
// vanishing at q = infinity, deg(den) - deg(num), +inf for zero.
class RationalQ {
 public:
  RationalQ() : den_(Rational(1)) {}
  RationalQ(const Rational& c) : num_(c), den_(Rational(1)) {}  // NOLINT: implicit by design
  RationalQ(long long c) : RationalQ(Rational(c)) {}
  RationalQ(Poly num, Poly den = Poly(Rational(1)));

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }

  Order order_at_infinity() const {
    if (is_zero()) return Order::infinity();
    return Order(den_.degree() - num_.degree());
  }
  bool regular_at_zero() const { return den_.coeff(0) != 0; }

  Rational operator()(const Rational& x) const;

  RationalQ operator-() const;
  friend RationalQ operator+(const RationalQ& a, const RationalQ& b);
  friend RationalQ operator-(const RationalQ& a, const RationalQ& b);
  friend RationalQ operator*(const RationalQ& a, const RationalQ& b);
  friend RationalQ operator/(const RationalQ& a, const RationalQ& b);
  RationalQ& operator+=(const RationalQ& o) { return *this = *this + o; }
  RationalQ& operator-=(const RationalQ& o) { return *this = *this - o; }
  RationalQ& operator*=(const RationalQ& o) { return *this = *this * o; }
  RationalQ& operator/=(const RationalQ& o) { return *this = *this / o; }
  friend bool operator==(const RationalQ& a, const RationalQ& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  // Multiply by q^k (k of either sign).
  RationalQ times_qpow(long long k) const;

 private:
  void canonicalize();
  Poly num_, den_;
};

// prod_j (1 - q^{a_j}); every a_j must be positive.
RationalQ euler_factor(const std::vector<int>& exponents);

// True iff every pole is at a root of unity, verified by exact arithmetic:
// the denominator is repeatedly stripped of gcd(den, q^m - 1) for
// m = 1..m_cap and must reduce to a constant. m_cap defaults to deg(den),
// which covers every denominator dividing a product of (1 - q^m) factors
// (each factor's degree is m, so m never exceeds the total degree).
bool poles_only_at_roots_of_unity(const RationalQ& f, int m_cap = -1);

}  // namespace qk

namespace Eigen {

template <>
struct NumTraits<qk::RationalQ> {
  using Self = qk::RationalQ;
  using Real = Self;
  using NonInteger = Self;
  using Literal = Self;
  using Nested = Self;
  static inline Self epsilon() { return Self(); }
  static inline Self dummy_precision() { return Self(); }
  static inline int digits10() { return 0; }
  enum {
    IsInteger = 0,
    IsSigned = 1,
    IsComplex = 0,
    RequireInitialization = 1,
    ReadCost = 16,
    AddCost = 400,
    MulCost = 400,
  };
};

}  // namespace Eigen
