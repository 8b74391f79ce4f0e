#include "qk/qpoly.hpp"

#include <stdexcept>

namespace qk {

Poly::Poly(const Rational& c) {
  if (c != 0) c_.push_back(c);
}

Poly::Poly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

Poly Poly::monomial(int k, const Rational& coeff) {
  if (k < 0) throw std::invalid_argument("monomial: negative exponent");
  if (coeff == 0) return {};
  std::vector<Rational> c(static_cast<size_t>(k) + 1, Rational(0));
  c.back() = coeff;
  Poly p;
  p.c_ = std::move(c);
  return p;
}

void Poly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Rational Poly::coeff(int k) const {
  if (k < 0 || k >= static_cast<int>(c_.size())) return Rational(0);
  return c_[static_cast<size_t>(k)];
}

const Rational& Poly::leading() const {
  if (is_zero()) throw std::domain_error("leading: zero polynomial");
  return c_.back();
}

Rational Poly::operator()(const Rational& x) const {
  Rational v(0);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) v = v * x + *it;
  return v;
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& v : r.c_) v = -v;
  return r;
}

Poly operator+(const Poly& a, const Poly& b) {
  Poly r;
  r.c_.resize(std::max(a.c_.size(), b.c_.size()), Rational(0));
  for (size_t k = 0; k < r.c_.size(); ++k) {
    if (k < a.c_.size()) r.c_[k] += a.c_[k];
    if (k < b.c_.size()) r.c_[k] += b.c_[k];
  }
  r.trim();
  return r;
}

Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }

Poly operator*(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  Poly r;
  r.c_.assign(a.c_.size() + b.c_.size() - 1, Rational(0));
  for (size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i] == 0) continue;
    for (size_t j = 0; j < b.c_.size(); ++j) r.c_[i + j] += a.c_[i] * b.c_[j];
  }
  r.trim();
  return r;
}

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
  if (b.is_zero()) throw std::domain_error("divmod: division by zero polynomial");
  Poly rem = a, quot;
  if (a.degree() >= b.degree())
    quot.c_.assign(static_cast<size_t>(a.degree() - b.degree()) + 1, Rational(0));
  while (!rem.is_zero() && rem.degree() >= b.degree()) {
    const int shift = rem.degree() - b.degree();
    const Rational f = rem.leading() / b.leading();
    quot.c_[static_cast<size_t>(shift)] = f;
    rem -= Poly::monomial(shift, f) * b;
  }
  quot.trim();
  return {quot, rem};
}

Poly exact_div(const Poly& a, const Poly& b) {
  auto [q, r] = divmod(a, b);
  if (!r.is_zero()) throw std::domain_error("exact_div: remainder nonzero");
  return q;
}

namespace {

using ZPoly = std::vector<BigInt>;  // trimmed, possibly empty

void ztrim(ZPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

BigInt content(const ZPoly& p) {
  BigInt g(0);
  for (const auto& c : p) g = boost::multiprecision::gcd(g, c);
  return g;
}

void make_primitive(ZPoly& p) {
  const BigInt g = content(p);
  if (g == 0 || g == 1) return;
  for (auto& c : p) c /= g;
}

// Pseudo-remainder: lc(b)^(deg a - deg b + 1) * a mod b, exact over Z.
ZPoly pseudo_rem(ZPoly a, const ZPoly& b) {
  const BigInt lb = b.back();
  while (a.size() >= b.size()) {
    const BigInt la = a.back();
    const size_t shift = a.size() - b.size();
    for (auto& c : a) c *= lb;
    for (size_t j = 0; j + 1 < b.size(); ++j) a[shift + j] -= la * b[j];
    a.pop_back();
    ztrim(a);
    if (a.empty()) break;
  }
  return a;
}

ZPoly clear_denominators(const Poly& p) {
  BigInt l(1);
  for (const auto& c : p.coeffs()) l = boost::multiprecision::lcm(l, denominator(c));
  ZPoly z;
  z.reserve(p.coeffs().size());
  for (const auto& c : p.coeffs()) z.push_back(numerator(c) * (l / denominator(c)));
  return z;
}

}  // namespace

Poly poly_gcd(const Poly& a, const Poly& b) {
  if (a.is_zero() && b.is_zero()) return {};
  ZPoly x = clear_denominators(a), y = clear_denominators(b);
  make_primitive(x);
  make_primitive(y);
  if (x.size() < y.size()) std::swap(x, y);
  while (!y.empty()) {
    ZPoly r = pseudo_rem(x, y);
    make_primitive(r);
    x = std::move(y);
    y = std::move(r);
  }
  // Monic over Q.
  std::vector<Rational> c;
  c.reserve(x.size());
  const BigInt lead = x.back();
  for (const auto& v : x) c.push_back(Rational(v) / Rational(lead));
  return Poly(std::move(c));
}

Poly poly_pow(Poly base, unsigned e) {
  Poly r{Rational(1)};
  while (e) {
    if (e & 1u) r *= base;
    base *= base;
    e >>= 1u;
  }
  return r;
}

}  // namespace qk
