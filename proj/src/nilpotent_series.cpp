#include "qk/nilpotent_series.hpp"

#include <stdexcept>

namespace qk {

NilpotentSeries::NilpotentSeries(int n) {
  if (n < 0) throw std::invalid_argument("NilpotentSeries: nilpotency must be >= 0");
  c_.assign(static_cast<size_t>(n) + 1, RationalQ());
}

NilpotentSeries::NilpotentSeries(int n, const RationalQ& c0) : NilpotentSeries(n) {
  c_[0] = c0;
}

const RationalQ& NilpotentSeries::coeff(int j) const {
  if (j < 0 || j > nilpotency()) throw std::out_of_range("NilpotentSeries: coefficient index");
  return c_[static_cast<size_t>(j)];
}

void NilpotentSeries::set_coeff(int j, const RationalQ& v) {
  if (j < 0 || j > nilpotency()) throw std::out_of_range("NilpotentSeries: coefficient index");
  c_[static_cast<size_t>(j)] = v;
}

bool NilpotentSeries::is_zero() const {
  for (const auto& v : c_)
    if (!v.is_zero()) return false;
  return true;
}

NilpotentSeries NilpotentSeries::operator-() const {
  NilpotentSeries r(nilpotency());
  for (size_t j = 0; j < c_.size(); ++j) r.c_[j] = -c_[j];
  return r;
}

static void require_same_ring(const NilpotentSeries& a, const NilpotentSeries& b) {
  if (a.nilpotency() != b.nilpotency())
    throw std::invalid_argument("NilpotentSeries: mixed nilpotency orders");
}

NilpotentSeries operator+(const NilpotentSeries& a, const NilpotentSeries& b) {
  require_same_ring(a, b);
  NilpotentSeries r(a.nilpotency());
  for (int j = 0; j <= a.nilpotency(); ++j) r.set_coeff(j, a.coeff(j) + b.coeff(j));
  return r;
}

NilpotentSeries operator-(const NilpotentSeries& a, const NilpotentSeries& b) {
  return a + (-b);
}

NilpotentSeries operator*(const NilpotentSeries& a, const NilpotentSeries& b) {
  require_same_ring(a, b);
  NilpotentSeries r(a.nilpotency());
  for (int i = 0; i <= a.nilpotency(); ++i) {
    if (a.coeff(i).is_zero()) continue;
    for (int j = 0; i + j <= a.nilpotency(); ++j) {
      if (b.coeff(j).is_zero()) continue;
      r.set_coeff(i + j, r.coeff(i + j) + a.coeff(i) * b.coeff(j));
    }
  }
  return r;
}

bool operator==(const NilpotentSeries& a, const NilpotentSeries& b) {
  if (a.nilpotency() != b.nilpotency()) return false;
  for (int j = 0; j <= a.nilpotency(); ++j)
    if (!(a.coeff(j) == b.coeff(j))) return false;
  return true;
}

NilpotentSeries NilpotentSeries::invert() const {
  if (c_[0].is_zero())
    throw std::domain_error("NilpotentSeries::invert: constant term is not a unit");
  int n = nilpotency();
  NilpotentSeries r(n);
  RationalQ b0 = RationalQ(1) / c_[0];
  r.set_coeff(0, b0);
  for (int m = 1; m <= n; ++m) {
    RationalQ acc;
    for (int j = 1; j <= m; ++j) acc += coeff(j) * r.coeff(m - j);
    r.set_coeff(m, -(b0 * acc));
  }
  return r;
}

NilpotentSeries NilpotentSeries::pow(int e) const {
  if (e < 0) return invert().pow(-e);
  NilpotentSeries acc(nilpotency(), RationalQ(1));
  NilpotentSeries base = *this;
  while (e > 0) {
    if (e & 1) acc = acc * base;
    base = base * base;
    e >>= 1;
  }
  return acc;
}

Order NilpotentSeries::min_order() const {
  Order best = Order::infinity();
  for (const auto& v : c_) best = min(best, v.order_at_infinity());
  return best;
}

NilpotentSeries j_coefficient_Pn(int n, int d) {
  if (n < 1) throw std::invalid_argument("j_coefficient_Pn: n must be >= 1");
  if (d < 0) throw std::invalid_argument("j_coefficient_Pn: d must be >= 0");
  NilpotentSeries j(n, RationalQ(1));
  for (int m = 1; m <= d; ++m) {
    NilpotentSeries factor(n);
    RationalQ qm(Poly::monomial(m));
    factor.set_coeff(0, RationalQ(1) - qm);
    factor.set_coeff(1, qm);
    j = j * factor.invert().pow(n + 1);
  }
  return j;
}

long long nu(int n, int d) {
  Order o = j_coefficient_Pn(n, d).min_order();
  if (o.is_infinite()) throw std::logic_error("nu: coefficient unexpectedly zero");
  return o.finite();
}

LemmaBoundReport verify_lemma_bound_A1(int d_max) {
  LemmaBoundReport rep;
  rep.d_max = d_max;
  for (int d = 1; d <= d_max; ++d) {
    long long lhs = nu(1, d);
    long long rhs = static_cast<long long>(d) + static_cast<long long>(d) * d;
    if (lhs < rhs) rep.holds = false;
    if (lhs != rhs) rep.equality_everywhere = false;
  }
  return rep;
}

static std::vector<RationalQ> involutive_basis_swap(const std::vector<RationalQ>& c) {
  // h = 1 - P and P = 1 - h: coefficients transform by
  // b_i = sum_{j >= i} binom(j, i) (-1)^i c_j, an involution.
  size_t n1 = c.size();
  std::vector<std::vector<Rational>> binom(n1, std::vector<Rational>(n1, Rational(0)));
  for (size_t j = 0; j < n1; ++j) {
    binom[j][0] = 1;
    for (size_t i = 1; i <= j; ++i)
      binom[j][i] = binom[j - 1][i - 1] + (i <= j - 1 ? binom[j - 1][i] : Rational(0));
  }
  std::vector<RationalQ> b(n1);
  for (size_t i = 0; i < n1; ++i) {
    RationalQ acc;
    for (size_t j = i; j < n1; ++j) acc += c[j] * RationalQ(binom[j][i]);
    b[i] = (i % 2 == 0) ? acc : -acc;
  }
  return b;
}

std::vector<RationalQ> to_line_bundle_basis(const NilpotentSeries& a) {
  std::vector<RationalQ> c;
  for (int j = 0; j <= a.nilpotency(); ++j) c.push_back(a.coeff(j));
  return involutive_basis_swap(c);
}

NilpotentSeries from_line_bundle_basis(const std::vector<RationalQ>& b) {
  if (b.empty()) throw std::invalid_argument("from_line_bundle_basis: empty coefficient list");
  std::vector<RationalQ> c = involutive_basis_swap(b);
  NilpotentSeries a(static_cast<int>(b.size()) - 1);
  for (size_t j = 0; j < c.size(); ++j) a.set_coeff(static_cast<int>(j), c[j]);
  return a;
}

}  // namespace qk
