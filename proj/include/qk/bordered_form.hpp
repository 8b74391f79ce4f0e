#pragma once

#include <optional>
#include <vector>

#include "qk/rational.hpp"
#include "qk/root_system.hpp"

namespace qk {

// The bordered quadratic form attached to (system, i): on the block of the
// first rank coordinates it is gram (= 2 A_R), the border column/row carries
// -1 at slot i and 0 elsewhere, and the corner entry is 2*rank. Positive
// definiteness of this matrix certifies (d,d)/2 + r(d) >= d_i on full support.
struct BorderedForm {
  RootSystemType base;
  int border_index;  // 1-based
  Eigen::MatrixXi matrix_2AQ;
};

BorderedForm make_bordered(const RootSystem& sys, int i);

// det of gram (= 2 A_R), exact.
BigInt det_2AR(const RootSystem& sys);

// det of the bordered matrix. Also evaluates the deletion identity
// 2*rank*det(2A_R) - det(2A_R with row/column i removed), with the empty
// determinant equal to 1, and throws if the two disagree.
BigInt det_2AQ(const RootSystem& sys, int i);

struct PositivityCertificate {
  std::vector<Rational> minors;  // leading principal minors, in order
  bool verdict = false;          // true iff every minor is strictly positive
};

// Leading-principal-minor test in exact arithmetic. Rejects non-symmetric input.
PositivityCertificate is_positive_definite(const MatR& m);

// True iff the bordered form at (sys, i) is positive definite for EVERY support
// subset S containing i: the sub-root-system on S, bordered at i with corner
// 2|S|. This realizes the reduction of the inequality to full support.
// No E8-factor precondition: for E8 the computed verdict (false at some i) is
// returned as-is.
bool verify_lemma_appA(const RootSystem& sys, int i);

struct BruteForceResult {
  bool holds = false;
  std::optional<CorootVector> violating_d;  // first violator in lex scan order
};

// Scans every integer d in [0,R]^rank and checks (d,d)/2 + r(d) >= d_i with
// equality only at d = 0. A nonzero d failing either clause is a violator.
BruteForceResult brute_force_inequality(const RootSystem& sys, int i, int radius);

// Witness that the two-variable form Q(d,z) = (d,d)/2 - d_i z + r(d) z^2 is not
// positive semidefinite along the slice through d: some real z makes Q(d,z)
// negative, which for d_i > 0 happens iff d_i^2 > 2 r(d) (d,d). The minimizing
// z* = d_i / (2 r(d)) and the value Q(d, z*) are exact rationals.
struct FormViolation {
  CorootVector d;
  Rational z_star;
  Rational value;  // Q(d, z*) < 0
};

// First (lex order) violating d in [0,R]^rank for the form at (sys, i), if any.
std::optional<FormViolation> form_violation_search(const RootSystem& sys, int i, int radius);

// det_2AQ for every border index 1..rank, in order.
std::vector<BigInt> vertex_scan(const RootSystem& sys);

}  // namespace qk
