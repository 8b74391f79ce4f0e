#pragma once

#include <Eigen/Core>
#include <ostream>
#include <stdexcept>

#include "qk/rational.hpp"

namespace qk {

// Exact element a + b*sqrt(n) of a real quadratic extension, n a fixed
// nonnegative integer radicand. Perfect-square radicands collapse to the
// rational part at construction, so b != 0 implies sqrt(n) is irrational;
// all comparisons reduce to integer sign tests, never to floating point.
class QuadExt {
 public:
  QuadExt() : a_(0), b_(0), n_(1) {}
  QuadExt(const Rational& a) : a_(a), b_(0), n_(1) {}  // NOLINT: implicit by design
  QuadExt(long long a) : a_(a), b_(0), n_(1) {}        // NOLINT: implicit by design
  QuadExt(const Rational& a, const Rational& b, const BigInt& n) : a_(a), b_(b), n_(n) {
    if (n_ < 0) throw std::invalid_argument("QuadExt: negative radicand");
    if (b_ == 0) {
      n_ = 1;
      return;
    }
    BigInt r = isqrt(n_);
    if (r * r == n_) {  // rational after all
      a_ += b_ * Rational(r);
      b_ = 0;
      n_ = 1;
    }
  }

  const Rational& rational_part() const { return a_; }
  const Rational& root_part() const { return b_; }
  const BigInt& radicand() const { return n_; }
  bool is_rational() const { return b_ == 0; }

  int sign() const {
    if (b_ == 0) return qk::sign(a_);
    if (a_ == 0) return qk::sign(b_);
    int sa = qk::sign(a_), sb = qk::sign(b_);
    if (sa == sb) return sa;
    // Opposite signs: compare a^2 against b^2 n; the larger magnitude wins.
    Rational lhs = a_ * a_;
    Rational rhs = b_ * b_ * Rational(n_);
    if (lhs == rhs) return 0;
    return (lhs > rhs) ? sa : sb;
  }

  QuadExt operator-() const { return raw(-a_, -b_, n_); }

  friend QuadExt operator+(const QuadExt& x, const QuadExt& y) {
    BigInt n = merge_radicand(x, y);
    return QuadExt(x.a_ + y.a_, x.b_ + y.b_, n);
  }
  friend QuadExt operator-(const QuadExt& x, const QuadExt& y) { return x + (-y); }
  friend QuadExt operator*(const QuadExt& x, const QuadExt& y) {
    BigInt n = merge_radicand(x, y);
    return QuadExt(x.a_ * y.a_ + x.b_ * y.b_ * Rational(n), x.a_ * y.b_ + x.b_ * y.a_, n);
  }
  friend QuadExt operator/(const QuadExt& x, const QuadExt& y) {
    if (y.sign() == 0) throw std::domain_error("QuadExt: division by zero");
    BigInt n = merge_radicand(x, y);
    // b != 0 implies sqrt(n) irrational, so the field norm is nonzero.
    Rational nrm = y.a_ * y.a_ - y.b_ * y.b_ * Rational(n);
    QuadExt num = x * QuadExt(y.a_, -y.b_, n);
    return QuadExt(num.a_ / nrm, num.b_ / nrm, n);
  }
  QuadExt& operator+=(const QuadExt& o) { return *this = *this + o; }
  QuadExt& operator-=(const QuadExt& o) { return *this = *this - o; }
  QuadExt& operator*=(const QuadExt& o) { return *this = *this * o; }

  friend bool operator==(const QuadExt& x, const QuadExt& y) { return (x - y).sign() == 0; }
  friend bool operator!=(const QuadExt& x, const QuadExt& y) { return !(x == y); }
  friend bool operator<(const QuadExt& x, const QuadExt& y) { return (x - y).sign() < 0; }
  friend bool operator>(const QuadExt& x, const QuadExt& y) { return y < x; }
  friend bool operator<=(const QuadExt& x, const QuadExt& y) { return !(y < x); }
  friend bool operator>=(const QuadExt& x, const QuadExt& y) { return !(x < y); }

  friend QuadExt min(const QuadExt& x, const QuadExt& y) { return (y < x) ? y : x; }
  friend QuadExt max(const QuadExt& x, const QuadExt& y) { return (x < y) ? y : x; }

  friend std::ostream& operator<<(std::ostream& os, const QuadExt& x) {
    os << x.a_;
    if (x.b_ != 0) os << " + " << x.b_ << "*sqrt(" << x.n_ << ")";
    return os;
  }

 private:
  static QuadExt raw(const Rational& a, const Rational& b, const BigInt& n) {
    QuadExt r;
    r.a_ = a;
    r.b_ = b;
    r.n_ = n;
    return r;
  }
  // Two values combine when either is rational or the radicands agree;
  // distinct irrational radicands never meet in one computation here.
  static BigInt merge_radicand(const QuadExt& x, const QuadExt& y) {
    if (x.b_ == 0) return y.n_;
    if (y.b_ == 0) return x.n_;
    if (x.n_ != y.n_) throw std::invalid_argument("QuadExt: mixed radicands");
    return x.n_;
  }

  Rational a_, b_;
  BigInt n_;
};

}  // namespace qk

namespace Eigen {

template <>
struct NumTraits<qk::QuadExt> {
  using Real = qk::QuadExt;
  using NonInteger = qk::QuadExt;
  using Literal = qk::QuadExt;
  using Nested = qk::QuadExt;
  static inline Real epsilon() { return Real(); }
  static inline Real dummy_precision() { return Real(); }
  static inline int digits10() { return 0; }
  enum {
    IsInteger = 0,
    IsSigned = 1,
    IsComplex = 0,
    RequireInitialization = 1,
    ReadCost = 16,
    AddCost = 80,
    MulCost = 80,
  };
};

}  // namespace Eigen
