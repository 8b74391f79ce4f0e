#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "qk/novikov.hpp"
#include "qk/quad_field.hpp"
#include "qk/rational.hpp"

namespace qk {

// Effective cone N^s together with nef integer functionals p_1..p_k.
// Invariants: every p_i is componentwise nonnegative, and every nonzero
// effective d has p_i . d > 0 for at least one i.
class EffLattice {
 public:
  EffLattice(int s, std::vector<Eigen::VectorXi> functionals);

  int s() const { return s_; }
  int k() const { return static_cast<int>(p_.size()); }
  const std::vector<Eigen::VectorXi>& functionals() const { return p_; }
  long long pair(int i, const MultiDegree& d) const;
  long long max_pairing(const MultiDegree& d) const;

 private:
  int s_;
  std::vector<Eigen::VectorXi> p_;
};

// Truncated fundamental solution: T_0 = identity, higher coefficients vanish
// at q = infinity, are regular at q = 0, and have poles only at roots of unity.
struct FundamentalSolution {
  EffLattice lattice;
  NovikovSeries coeffs;

  int dim() const { return coeffs.dim(); }
};

// Throws std::invalid_argument naming the first violated invariant.
void validate_fundamental_solution(const FundamentalSolution& fs);

// Quadratic lower-bound certificate for orders of vanishing at q = infinity:
// ord T_d >= (1/2) d^T gram d + m.d + c, with gram over Q(sqrt(N)) stored as
// rational and sqrt(N)-coefficient parts.
struct GrowthCertificate {
  MatR gram_rational;  // rational part of each gram entry
  MatR gram_root;      // coefficient of sqrt(N) in each gram entry
  BigInt N = 1;
  VecR m;
  Rational c = 0;

  int vars() const { return static_cast<int>(gram_rational.rows()); }
  QuadExt gram_entry(int i, int j) const;
  // (1/2) d^T gram d + m.d + c evaluated exactly in Q(sqrt(N)).
  QuadExt bound(const MultiDegree& d) const;
  bool positive_definite() const;
};

GrowthCertificate rational_certificate(const MatR& gram, const VecR& m, const Rational& c);

// True iff ord(T_d) >= cert.bound(d) for every d in the box, exactly.
// On failure the first offending degree is written to *witness when given.
bool check_quadratic_growth(const FundamentalSolution& fs, const GrowthCertificate& cert,
                            const Box& box, MultiDegree* witness = nullptr);

// Lower bounds L(d) on ord T_d propagated through the shift-connection
// recursion; +infinity records degrees where T_d is forced to vanish.
struct OrderTable {
  std::map<MultiDegree, Extended<Rational>> values;

  const Extended<Rational>& at(const MultiDegree& d) const;
};

// Dynamic program L(0) = 0 and, for d != 0,
//   L(d) = max_i(p_i . d) + min_{d' in F, d - d' effective} L(d - d') + C,
// with the empty minimum equal to +infinity.
OrderTable propagate_lower_bounds(const std::vector<MultiDegree>& F, const Rational& C,
                                  const EffLattice& lattice, const Box& box);

// Builds the canonical certificate from a finite connection support F and an
// order floor C:
//   gram = P^T P / sqrt(N) with N = k B^2, B = max_{d in F} ||d||,
//   ||d||^2 = sum_i (p_i . d)^2; m = 0 when C >= 0, else C times the
//   coordinate-sum functional; c = 0.
// Every d* in the box is then checked against the induction step
//   max_i(p_i . d*) + C + min_{d' in F, d' <= d*} bound(d* - d') >= bound(d*)
// together with the comparison chain that proves it (Cauchy-Schwarz on P d*
// and P d', ||d*||^2 <= k max_i(p_i . d*)^2, m.d' <= C, ||d'|| <= B), all in
// exact Q(sqrt(N)) arithmetic. Throws std::logic_error naming the offending
// d* if any step fails, std::invalid_argument if the functionals do not span
// (P^T P not positive definite) or F is empty/invalid.
GrowthCertificate construct_certificate(const std::vector<MultiDegree>& F, const Rational& C,
                                        const EffLattice& lattice, const Box& box);

// q-shift connection A = T^{-1} P q^{p Q d/dQ}(T), with coefficients
// A_d = sum_{d' + d'' = d} S_{d'} P q^{p . d''} T_{d''}.
struct ShiftConnection {
  MatR P;
  Eigen::VectorXi p;
  NovikovSeries A;
};

// Requires p componentwise nonnegative (nef) and invertible T_0; asserts
// regularity at q = 0 of every computed A_d and throws std::domain_error
// naming the offending degree otherwise.
ShiftConnection shift_connection(const FundamentalSolution& fs, const MatR& P,
                                 const Eigen::VectorXi& p);

// Quadratic order profile used by the synthetic generator.
struct OrderProfile {
  MatR gram;  // symmetric rational
  VecR m;
  Rational c = 0;

  Rational operator()(const MultiDegree& d) const;
};

// Deterministic pseudo-random fundamental solution whose entry at degree d
// has leading order exactly ceil(profile(d)), with denominators that are
// products of (1 - q^m). Requires profile(d) >= 1 for every nonzero d in the
// truncation box.
FundamentalSolution generate_synthetic_T(const EffLattice& lattice, int dim,
                                         const OrderProfile& profile, std::uint64_t seed,
                                         const Box& trunc);

// Instance whose shift connections are exactly polynomial in the Novikov
// variables: T is built (up to an optional unimodular conjugation) from
// diagonal entries solving first-order q-difference equations
// t(q Q) = t(Q) (1 + sum_{n} alpha_n Q^n), so A^{(i)} has finite support.
struct DifferenceModuleInstance {
  FundamentalSolution T;
  std::vector<MatR> P;                     // one pairing matrix per functional
  std::vector<ShiftConnection> connections;  // A^{(i)} for each functional
  std::vector<MultiDegree> F;              // union of nonzero supports
  Rational C;                              // min entry order over F
};

DifferenceModuleInstance generate_difference_module_T(const EffLattice& lattice, int dim,
                                                      std::uint64_t seed, const Box& trunc);

// Vanishing threshold for the connection of functional i:
//   E(d) = min_{d'' <= d} ( S_hat(d - d'') + bound(d'') - p_i . d'' ),
// where S_hat(e) bounds ord S_e from below through the composition estimate
// S_hat(e) = min_k max(k, M_k(e)), M_k = k-fold infimal convolution of the
// certificate bound over nonzero effective parts. Wherever E(d) > 0, a
// connection coefficient regular at q = 0 must vanish.
std::map<MultiDegree, Extended<QuadExt>> vanishing_estimate(const GrowthCertificate& cert,
                                                            const EffLattice& lattice, int i,
                                                            const Box& box);

std::string format_degree(const MultiDegree& d);

}  // namespace qk
