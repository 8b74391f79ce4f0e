#pragma once

#include <Eigen/Core>
#include <map>
#include <vector>

#include "qk/rational_q.hpp"

namespace qk {

using MultiDegree = std::vector<int>;
using MatQ = Eigen::Matrix<RationalQ, Eigen::Dynamic, Eigen::Dynamic>;

long long total_degree(const MultiDegree& d);
bool is_effective(const MultiDegree& d);
MultiDegree degree_sum(const MultiDegree& a, const MultiDegree& b);
// Componentwise a - b; false when the difference leaves the effective cone.
bool degree_sub(const MultiDegree& a, const MultiDegree& b, MultiDegree& out);

// Rectangular truncation box [0, cap_1] x ... x [0, cap_s].
struct Box {
  std::vector<int> cap;

  explicit Box(std::vector<int> caps);
  int vars() const { return static_cast<int>(cap.size()); }
  bool contains(const MultiDegree& d) const;
  // All contained degrees, sorted by total degree then lexicographically.
  std::vector<MultiDegree> graded_degrees() const;
};

// Matrix-valued power series in Novikov variables Q_1..Q_s, truncated to a
// box, with coefficients that are exact rational functions of q. Absent
// degrees are zero matrices.
class NovikovSeries {
 public:
  NovikovSeries(Box trunc, int dim);
  static NovikovSeries identity(Box trunc, int dim);

  const Box& trunc() const { return trunc_; }
  int dim() const { return dim_; }

  MatQ coeff(const MultiDegree& d) const;  // zero matrix if absent
  void set_coeff(const MultiDegree& d, const MatQ& m);
  bool coeff_is_zero(const MultiDegree& d) const;
  // Degrees with a nonzero stored coefficient, graded order.
  std::vector<MultiDegree> support() const;

  friend NovikovSeries operator+(const NovikovSeries& a, const NovikovSeries& b);
  friend NovikovSeries operator-(const NovikovSeries& a, const NovikovSeries& b);
  friend NovikovSeries operator*(const NovikovSeries& a, const NovikovSeries& b);
  friend bool operator==(const NovikovSeries& a, const NovikovSeries& b);

  // Left/right action of a constant matrix on every coefficient.
  NovikovSeries left_mul(const MatQ& m) const;
  NovikovSeries right_mul(const MatQ& m) const;

  // Multiplicative inverse through the graded recursion
  // S_0 = T_0^{-1}, S_d = -S_0 sum_{0 < d' <= d} T_{d'} S_{d - d'};
  // requires an invertible degree-zero coefficient.
  NovikovSeries invert() const;

  // Coefficient at d gains a factor q^{p . d}; p may be any integer vector.
  NovikovSeries q_dilate(const Eigen::VectorXi& p) const;

 private:
  Box trunc_;
  int dim_;
  std::map<MultiDegree, MatQ> coeffs_;
};

MatQ matq_zero(int dim);
MatQ matq_identity(int dim);
MatQ matq_mul(const MatQ& a, const MatQ& b);
bool matq_is_zero(const MatQ& m);
// Order at infinity of the minimal-order entry (+inf for the zero matrix).
Order matq_min_order(const MatQ& m);

}  // namespace qk
