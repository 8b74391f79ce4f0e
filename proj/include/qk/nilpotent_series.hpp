#pragma once

#include <vector>

#include "qk/extended.hpp"
#include "qk/rational_q.hpp"

namespace qk {

// Element of R[h]/(h^{n+1}) with coefficients in exact rational functions of
// q. Invariant: coeffs_ has exactly n+1 slots, index j = coefficient of h^j.
class NilpotentSeries {
 public:
  explicit NilpotentSeries(int n);
  NilpotentSeries(int n, const RationalQ& c0);

  int nilpotency() const { return static_cast<int>(c_.size()) - 1; }
  const RationalQ& coeff(int j) const;
  void set_coeff(int j, const RationalQ& v);
  bool is_zero() const;

  NilpotentSeries operator-() const;
  friend NilpotentSeries operator+(const NilpotentSeries& a, const NilpotentSeries& b);
  friend NilpotentSeries operator-(const NilpotentSeries& a, const NilpotentSeries& b);
  friend NilpotentSeries operator*(const NilpotentSeries& a, const NilpotentSeries& b);
  friend bool operator==(const NilpotentSeries& a, const NilpotentSeries& b);

  // Multiplicative inverse; requires coeff(0) != 0.
  NilpotentSeries invert() const;
  NilpotentSeries pow(int e) const;

  // Minimal order at infinity over all h-coefficients (+inf when zero).
  Order min_order() const;

 private:
  std::vector<RationalQ> c_;
};

// Degree-d coefficient of the projective-space J-function in the h-basis,
// prod_{m=1}^{d} ((1-q^m) + q^m h)^{-(n+1)} over R[h]/(h^{n+1}).
NilpotentSeries j_coefficient_Pn(int n, int d);

// nu(n, d) = min order at infinity of j_coefficient_Pn(n, d); always finite
// because the h^0 coefficient is a nonzero product.
long long nu(int n, int d);

struct LemmaBoundReport {
  bool holds = true;               // nu(1, d) >= d + d^2 for all checked d
  bool equality_everywhere = true;  // the bound is attained at every d
  int d_max = 0;
};

// Checks nu(1, d) against the quadratic exponent d + d^2 for d = 1..d_max.
LemmaBoundReport verify_lemma_bound_A1(int d_max);

// Change of basis between powers of h and powers of P = 1 - h. The relation
// is an involution, so the same transform maps both directions.
std::vector<RationalQ> to_line_bundle_basis(const NilpotentSeries& a);
NilpotentSeries from_line_bundle_basis(const std::vector<RationalQ>& b);

}  // namespace qk
