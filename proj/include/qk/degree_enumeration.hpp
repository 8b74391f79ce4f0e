#pragma once

#include <map>
#include <vector>

#include "qk/rational.hpp"
#include "qk/root_system.hpp"

namespace qk {

enum class Variant { GENERAL, SIMPLY_LACED_DISTINCT };

// A product of line-bundle classes indexed by i_1..i_l (a multiset of simple
// indices). SIMPLY_LACED_DISTINCT additionally requires a simply-laced system
// and pairwise distinct indices.
struct ProductSpec {
  RootSystem system;
  std::vector<int> indices;  // 1-based
  Variant variant = Variant::GENERAL;

  ProductSpec(RootSystem sys, std::vector<int> idx, Variant var);
};

// Degrees on the base are lifted before evaluating the objective. An empty
// table is the identity lift (the full-flag case). A nonempty table restricts
// the enumeration domain to its keys and must cover every degree requested;
// each entry may change coordinates only on the inferred index set I_P (the
// slots where some table entry differs), so lifted degrees project back.
class LiftMap {
 public:
  LiftMap() = default;
  explicit LiftMap(std::map<std::vector<int>, std::vector<int>> table);

  bool identity() const { return table_.empty(); }
  CorootVector apply(const CorootVector& d) const;
  const std::map<std::vector<int>, std::vector<int>>& table() const { return table_; }
  const std::vector<int>& proper_indices() const { return proper_; }  // I_P, 1-based

 private:
  std::map<std::vector<int>, std::vector<int>> table_;
  std::vector<int> proper_;
};

// Objective on an (already lifted) degree d >= 0:
//   GENERAL:              sum_k d_{i_k} - r(d) - (d,d)/2
//   SIMPLY_LACED_DISTINCT: sum_k d_{i_k} - (rho,d) - (d,d)/2
// Nonnegativity of this value is what admits d into a quantum product support.
Rational objective(const ProductSpec& spec, const CorootVector& d);

struct DegreeSet {
  std::vector<CorootVector> degrees;  // graded-lex order; always contains 0
  std::vector<Rational> values;       // objective per degree
};

// All d >= 0 with objective(spec, lift(d)) >= 0; finite because the objective's
// level sets are ellipsoids. Exhaustive and exact.
DegreeSet admissible_degrees(const ProductSpec& spec, const LiftMap& lift = {});

// Generic engine: all d in N^rank with linear.d + c0 - (1/2) d^T gram d >= 0,
// for positive definite gram. Recursive coordinate fixing with exact rational
// LDL^T completion-of-squares pruning; returned in graded-lex order.
std::vector<CorootVector> enumerate_sublevel(const MatR& gram, const VecR& linear,
                                             const Rational& c0);

struct DegreeBoundReport {
  DegreeSet set;
  long long max_total_degree = 0;  // max over the set of |d| = (d, rho)
};

DegreeBoundReport degree_bound_report(const ProductSpec& spec, const LiftMap& lift = {});

// Exact positive lower bound on the smallest eigenvalue of a positive definite
// rational matrix: 1 / ||M^{-1}||_inf, computed from the exact inverse.
Rational lambda_lower_bound(const MatR& gram);

// Independent oracle: scan the box [0,R]^rank with R = floor(2 l / lambda) + 1,
// which provably contains every admissible degree, and filter exactly.
DegreeSet box_scan_admissible(const ProductSpec& spec, const LiftMap& lift = {});
long long oracle_box_radius(const ProductSpec& spec);

}  // namespace qk
