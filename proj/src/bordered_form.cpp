#include "qk/bordered_form.hpp"

#include <functional>
#include <stdexcept>

#include "qk/linalg.hpp"

namespace qk {

namespace {

Mat<BigInt> to_bigint(const Eigen::MatrixXi& m) {
  Mat<BigInt> r(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) r(i, j) = BigInt(m(i, j));
  return r;
}

void check_index(const RootSystem& sys, int i) {
  if (i < 1 || i > sys.rank()) throw std::out_of_range("border index out of range");
}

}  // namespace

BorderedForm make_bordered(const RootSystem& sys, int i) {
  check_index(sys, i);
  const int n = sys.rank();
  Eigen::MatrixXi m = Eigen::MatrixXi::Zero(n + 1, n + 1);
  m.topLeftCorner(n, n) = sys.gram();
  m(i - 1, n) = -1;
  m(n, i - 1) = -1;
  m(n, n) = 2 * n;
  if (!sys.simple()) throw std::invalid_argument("make_bordered: simple type required");
  return BorderedForm{sys.type(), i, m};
}

BigInt det_2AR(const RootSystem& sys) { return determinant<BigInt>(to_bigint(sys.gram())); }

BigInt det_2AQ(const RootSystem& sys, int i) {
  check_index(sys, i);
  const int n = sys.rank();
  Eigen::MatrixXi bordered = Eigen::MatrixXi::Zero(n + 1, n + 1);
  bordered.topLeftCorner(n, n) = sys.gram();
  bordered(i - 1, n) = -1;
  bordered(n, i - 1) = -1;
  bordered(n, n) = 2 * n;
  const BigInt by_elimination = determinant<BigInt>(to_bigint(bordered));

  // Deletion identity cross-check; empty determinant = 1.
  Eigen::MatrixXi deleted(n - 1, n - 1);
  int r = 0;
  for (int a = 0; a < n; ++a) {
    if (a == i - 1) continue;
    int c = 0;
    for (int b = 0; b < n; ++b) {
      if (b == i - 1) continue;
      deleted(r, c++) = sys.gram()(a, b);
    }
    ++r;
  }
  const BigInt by_deletion =
      BigInt(2 * n) * det_2AR(sys) - (n == 1 ? BigInt(1) : determinant<BigInt>(to_bigint(deleted)));
  if (by_elimination != by_deletion)
    throw std::logic_error("det_2AQ: elimination and deletion identities disagree");
  return by_elimination;
}

PositivityCertificate is_positive_definite(const MatR& m) {
  if (!is_symmetric(m)) throw std::invalid_argument("is_positive_definite: matrix not symmetric");
  PositivityCertificate cert;
  cert.minors = leading_principal_minors<Rational>(m);
  cert.verdict = cert.minors.size() == static_cast<size_t>(m.rows());
  for (const auto& v : cert.minors)
    if (v <= 0) cert.verdict = false;
  return cert;
}

namespace {

// Bordered form of the sub-root-system on support S (indices ascending),
// bordered at the slot of i within S, corner 2|S|.
bool bordered_subset_pd(const RootSystem& sys, const std::vector<int>& subset, int i) {
  const int k = static_cast<int>(subset.size());
  Mat<BigInt> m(k + 1, k + 1);
  int ipos = -1;
  for (int a = 0; a < k; ++a) {
    for (int b = 0; b < k; ++b) m(a, b) = BigInt(sys.gram()(subset[a], subset[b]));
    m(a, k) = BigInt(0);
    m(k, a) = BigInt(0);
    if (subset[a] == i - 1) ipos = a;
  }
  m(ipos, k) = BigInt(-1);
  m(k, ipos) = BigInt(-1);
  m(k, k) = BigInt(2 * k);
  auto minors = leading_principal_minors<BigInt>(m);
  if (minors.size() != static_cast<size_t>(k + 1)) return false;
  for (const auto& v : minors)
    if (v <= 0) return false;
  return true;
}

}  // namespace

bool verify_lemma_appA(const RootSystem& sys, int i) {
  check_index(sys, i);
  const int n = sys.rank();
  // Every subset S containing i; bit t of mask covers index t+1, i forced in.
  const unsigned forced = 1u << (i - 1);
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    if (!(mask & forced)) continue;
    std::vector<int> subset;
    for (int t = 0; t < n; ++t)
      if (mask & (1u << t)) subset.push_back(t);
    if (!bordered_subset_pd(sys, subset, i)) return false;
  }
  return true;
}

namespace {

// Shared box scan over [0,R]^rank in lex order with incremental quadratic
// evaluation; visit(d, norm, r) returns true to stop at the current point.
bool scan_box(const RootSystem& sys, int radius,
              const std::function<bool(const CorootVector&, long long, int)>& visit) {
  const int n = sys.rank();
  const auto& g = sys.gram();
  CorootVector d = CorootVector::Zero(n);
  std::function<bool(int, long long, int)> rec = [&](int t, long long nrm, int r) -> bool {
    if (t == n) return visit(d, nrm, r);
    long long c = 0;
    for (int a = 0; a < t; ++a) c += static_cast<long long>(g(t, a)) * d(a);
    for (int v = 0; v <= radius; ++v) {
      d(t) = v;
      const long long nt = nrm + 2 * c * v + static_cast<long long>(g(t, t)) * v * v;
      if (rec(t + 1, nt, r + (v > 0 ? 1 : 0))) return true;
    }
    d(t) = 0;
    return false;
  };
  return rec(0, 0, 0);
}

}  // namespace

BruteForceResult brute_force_inequality(const RootSystem& sys, int i, int radius) {
  check_index(sys, i);
  if (radius < 1) throw std::invalid_argument("brute_force_inequality: radius must be >= 1");
  BruteForceResult res;
  res.holds = true;
  scan_box(sys, radius, [&](const CorootVector& d, long long nrm, int r) {
    const long long lhs2 = nrm + 2 * r;  // 2 * (m_d)
    const long long rhs2 = 2 * static_cast<long long>(d(i - 1));
    const bool zero = (r == 0);
    if (lhs2 < rhs2 || (lhs2 == rhs2 && !zero)) {
      res.holds = false;
      res.violating_d = d;
      return true;
    }
    return false;
  });
  return res;
}

std::optional<FormViolation> form_violation_search(const RootSystem& sys, int i, int radius) {
  check_index(sys, i);
  if (radius < 1) throw std::invalid_argument("form_violation_search: radius must be >= 1");
  std::optional<FormViolation> found;
  scan_box(sys, radius, [&](const CorootVector& d, long long nrm, int r) {
    if (r == 0) return false;
    const long long di = d(i - 1);
    if (di * di <= 2 * static_cast<long long>(r) * nrm) return false;
    FormViolation v;
    v.d = d;
    v.z_star = Rational(di) / Rational(2 * r);
    v.value = Rational(nrm) / 2 - Rational(di) * v.z_star + Rational(r) * v.z_star * v.z_star;
    found = v;
    return true;
  });
  return found;
}

std::vector<BigInt> vertex_scan(const RootSystem& sys) {
  std::vector<BigInt> out;
  out.reserve(sys.rank());
  for (int i = 1; i <= sys.rank(); ++i) out.push_back(det_2AQ(sys, i));
  return out;
}

}  // namespace qk
