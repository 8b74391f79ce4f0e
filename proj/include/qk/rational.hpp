#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <Eigen/Core>

#include <stdexcept>
#include <string>

namespace qk {

// Exact arithmetic scalars. GMP-backed, expression templates off so the types
// behave as plain values inside Eigen kernels.
using BigInt   = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                               boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;

inline BigInt numerator(const Rational& x) { return boost::multiprecision::numerator(x); }
inline BigInt denominator(const Rational& x) { return boost::multiprecision::denominator(x); }

inline int sign(const Rational& x) { return x.sign(); }
inline int sign(const BigInt& x) { return x.sign(); }

// floor(x) as an integer; exact for any rational.
inline BigInt floor_int(const Rational& x) {
  BigInt q, r;
  boost::multiprecision::divide_qr(numerator(x), denominator(x), q, r);
  if (r != 0 && x < 0) --q;
  return q;
}

inline BigInt ceil_int(const Rational& x) { return -floor_int(-x); }

// Largest integer s with s*s <= n. Requires n >= 0.
inline BigInt isqrt(const BigInt& n) {
  if (n < 0) throw std::domain_error("isqrt: negative argument");
  return boost::multiprecision::sqrt(n);
}

inline long long to_ll(const BigInt& n) { return n.convert_to<long long>(); }

// Serialization used across all JSON surfaces: "p" or "p/q".
inline std::string to_fraction_string(const Rational& x) {
  BigInt n = numerator(x), d = denominator(x);
  if (d == 1) return n.str();
  return n.str() + "/" + d.str();
}

inline Rational rational_from_string(const std::string& s) {
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rational(BigInt(s));
    BigInt n(s.substr(0, slash)), d(s.substr(slash + 1));
    if (d == 0) throw std::invalid_argument("zero denominator");
    return Rational(n) / Rational(d);
  } catch (const std::exception&) {
    throw std::invalid_argument("not a rational: \"" + s + "\"");
  }
}

}  // namespace qk

namespace Eigen {

template <>
struct NumTraits<qk::Rational> : GenericNumTraits<qk::Rational> {
  using Real = qk::Rational;
  using NonInteger = qk::Rational;
  using Nested = qk::Rational;
  static inline Real epsilon() { return Real(0); }
  static inline Real dummy_precision() { return Real(0); }
  static inline int digits10() { return 0; }
  enum {
    IsInteger = 0,
    IsSigned = 1,
    IsComplex = 0,
    RequireInitialization = 1,
    ReadCost = 8,
    AddCost = 40,
    MulCost = 40,
  };
};

}  // namespace Eigen

namespace qk {

using MatR = Eigen::Matrix<Rational, Eigen::Dynamic, Eigen::Dynamic>;
using VecR = Eigen::Matrix<Rational, Eigen::Dynamic, 1>;

inline MatR to_rational(const Eigen::MatrixXi& m) {
  MatR r(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) r(i, j) = Rational(m(i, j));
  return r;
}

inline VecR to_rational(const Eigen::VectorXi& v) {
  VecR r(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) r(i) = Rational(v(i));
  return r;
}

}  // namespace qk
