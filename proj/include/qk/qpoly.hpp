#pragma once

#include <utility>
#include <vector>

#include "qk/rational.hpp"

namespace qk {

// Dense univariate polynomial in q over the rationals. Invariant: the
// coefficient vector is empty (zero polynomial) or has a nonzero back.
class Poly {
 public:
  Poly() = default;
  Poly(const Rational& c);  // NOLINT: constant polynomial, implicit by design
  Poly(long long c) : Poly(Rational(c)) {}
  explicit Poly(std::vector<Rational> coeffs);
  static Poly monomial(int k, const Rational& coeff = Rational(1));

  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
  Rational coeff(int k) const;
  const Rational& leading() const;
  const std::vector<Rational>& coeffs() const { return c_; }

  Rational operator()(const Rational& x) const;

  Poly operator-() const;
  friend Poly operator+(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a, const Poly& b);
  friend Poly operator*(const Poly& a, const Poly& b);
  Poly& operator+=(const Poly& o) { return *this = *this + o; }
  Poly& operator-=(const Poly& o) { return *this = *this - o; }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }
  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

  // Field division: (quotient, remainder) with deg r < deg b.
  friend std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b);

 private:
  void trim();
  std::vector<Rational> c_;
};

// Monic gcd via the primitive polynomial remainder sequence over the integers
// (denominators cleared first, contents stripped at every step).
Poly poly_gcd(const Poly& a, const Poly& b);

Poly poly_pow(Poly base, unsigned e);

// Exact quotient; throws if b does not divide a.
Poly exact_div(const Poly& a, const Poly& b);

}  // namespace qk
