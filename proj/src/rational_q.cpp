#include "qk/rational_q.hpp"

#include <stdexcept>
#include <utility>

namespace qk {

RationalQ::RationalQ(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw std::invalid_argument("RationalQ: zero denominator");
  canonicalize();
}

void RationalQ::canonicalize() {
  if (num_.is_zero()) {
    den_ = Poly(Rational(1));
    return;
  }
  Poly g = poly_gcd(num_, den_);
  if (g.degree() > 0) {
    num_ = exact_div(num_, g);
    den_ = exact_div(den_, g);
  }
  Rational lead = den_.leading();
  if (lead != Rational(1)) {
    Rational inv = Rational(1) / lead;
    num_ = num_ * Poly(inv);
    den_ = den_ * Poly(inv);
  }
}

Rational RationalQ::operator()(const Rational& x) const {
  Rational dv = den_(x);
  if (dv == 0) throw std::domain_error("RationalQ: evaluation at a pole");
  return num_(x) / dv;
}

RationalQ RationalQ::operator-() const {
  RationalQ r;
  r.num_ = -num_;
  r.den_ = den_;
  return r;
}

RationalQ operator+(const RationalQ& a, const RationalQ& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  Poly g = poly_gcd(a.den_, b.den_);
  Poly bq = (g.degree() > 0) ? exact_div(b.den_, g) : b.den_;
  Poly aq = (g.degree() > 0) ? exact_div(a.den_, g) : a.den_;
  return RationalQ(a.num_ * bq + b.num_ * aq, a.den_ * bq);
}

RationalQ operator-(const RationalQ& a, const RationalQ& b) { return a + (-b); }

RationalQ operator*(const RationalQ& a, const RationalQ& b) {
  if (a.is_zero() || b.is_zero()) return RationalQ();
  // Cross-cancel first; with both inputs canonical the product of the
  // reduced pieces is already in lowest terms.
  Poly g1 = poly_gcd(a.num_, b.den_);
  Poly g2 = poly_gcd(b.num_, a.den_);
  Poly n1 = (g1.degree() > 0) ? exact_div(a.num_, g1) : a.num_;
  Poly d2 = (g1.degree() > 0) ? exact_div(b.den_, g1) : b.den_;
  Poly n2 = (g2.degree() > 0) ? exact_div(b.num_, g2) : b.num_;
  Poly d1 = (g2.degree() > 0) ? exact_div(a.den_, g2) : a.den_;
  return RationalQ(n1 * n2, d1 * d2);
}

RationalQ operator/(const RationalQ& a, const RationalQ& b) {
  if (b.is_zero()) throw std::domain_error("RationalQ: division by zero");
  RationalQ binv;
  binv.num_ = b.den_;
  binv.den_ = b.num_;
  binv.canonicalize();
  return a * binv;
}

RationalQ RationalQ::times_qpow(long long k) const {
  if (is_zero() || k == 0) return *this;
  if (k > 0) return RationalQ(num_ * Poly::monomial(static_cast<int>(k)), den_);
  return RationalQ(num_, den_ * Poly::monomial(static_cast<int>(-k)));
}

RationalQ euler_factor(const std::vector<int>& exponents) {
  Poly p(Rational(1));
  for (int a : exponents) {
    if (a <= 0) throw std::invalid_argument("euler_factor: exponents must be positive");
    p = p * (Poly(Rational(1)) - Poly::monomial(a));
  }
  return RationalQ(p);
}

bool poles_only_at_roots_of_unity(const RationalQ& f, int m_cap) {
  Poly rem = f.den();
  if (m_cap < 0) m_cap = std::max(rem.degree(), 1);
  for (int m = 1; m <= m_cap && rem.degree() > 0; ++m) {
    Poly cyc = Poly::monomial(m) - Poly(Rational(1));
    for (;;) {
      Poly g = poly_gcd(rem, cyc);
      if (g.degree() < 1) break;
      rem = exact_div(rem, g);
    }
  }
  return rem.degree() <= 0;
}

}  // namespace qk
