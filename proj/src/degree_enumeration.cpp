#include "qk/degree_enumeration.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

#include "qk/bordered_form.hpp"
#include "qk/linalg.hpp"

namespace qk {

ProductSpec::ProductSpec(RootSystem sys, std::vector<int> idx, Variant var)
    : system(std::move(sys)), indices(std::move(idx)), variant(var) {
  for (int i : indices)
    if (i < 1 || i > system.rank()) throw std::out_of_range("ProductSpec: index out of range");
  if (variant == Variant::SIMPLY_LACED_DISTINCT) {
    if (!system.simply_laced())
      throw std::invalid_argument("SIMPLY_LACED_DISTINCT requires a simply-laced system");
    std::set<int> uniq(indices.begin(), indices.end());
    if (uniq.size() != indices.size())
      throw std::invalid_argument("SIMPLY_LACED_DISTINCT requires pairwise distinct indices");
  }
}

LiftMap::LiftMap(std::map<std::vector<int>, std::vector<int>> table) : table_(std::move(table)) {
  std::set<int> proper;
  for (const auto& [d, dhat] : table_) {
    if (d.size() != dhat.size()) throw std::invalid_argument("LiftMap: rank mismatch in entry");
    for (size_t j = 0; j < d.size(); ++j) {
      if (dhat[j] < 0) throw std::invalid_argument("LiftMap: lifted degree not effective");
      if (dhat[j] != d[j]) proper.insert(static_cast<int>(j) + 1);
    }
  }
  // Projection property: entries agree with d outside I_P by construction of I_P;
  // I_P is recorded so callers can see which slots the lift is allowed to move.
  proper_.assign(proper.begin(), proper.end());
}

CorootVector LiftMap::apply(const CorootVector& d) const {
  if (table_.empty()) return d;
  std::vector<int> key(d.data(), d.data() + d.size());
  auto it = table_.find(key);
  if (it == table_.end()) {
    std::ostringstream os;
    os << "lift table missing degree (";
    for (Eigen::Index j = 0; j < d.size(); ++j) os << (j ? "," : "") << d(j);
    os << ")";
    throw std::out_of_range(os.str());
  }
  CorootVector out(d.size());
  for (Eigen::Index j = 0; j < d.size(); ++j) out(j) = it->second[j];
  return out;
}

Rational objective(const ProductSpec& spec, const CorootVector& d) {
  long long lin = 0;
  for (int i : spec.indices) lin += d(i - 1);
  const long long half_norm = norm(spec.system, d) / 2;
  if (spec.variant == Variant::GENERAL) return Rational(lin - support_size(d) - half_norm);
  return Rational(lin - pairing(d, rho(spec.system)) - half_norm);
}

namespace {

bool graded_lex_less(const CorootVector& a, const CorootVector& b) {
  const int ta = a.sum(), tb = b.sum();
  if (ta != tb) return ta < tb;
  for (Eigen::Index j = 0; j < a.size(); ++j)
    if (a(j) != b(j)) return a(j) < b(j);
  return false;
}

// Outer rational bound on sqrt(x): returns U with U >= sqrt(x) >= max(0, ...).
Rational sqrt_upper(const Rational& x) {
  if (x < 0) throw std::domain_error("sqrt_upper: negative");
  const BigInt p = numerator(x), q = denominator(x);
  return Rational(isqrt(p * q) + 1) / Rational(q);
}

}  // namespace

std::vector<CorootVector> enumerate_sublevel(const MatR& gram, const VecR& linear,
                                             const Rational& c0) {
  const int n = static_cast<int>(gram.rows());
  if (linear.size() != n) throw std::invalid_argument("enumerate_sublevel: size mismatch");
  if (!is_positive_definite(gram).verdict)
    throw std::invalid_argument("enumerate_sublevel: gram not positive definite");

  Mat<Rational> L;
  Vec<Rational> D;
  if (!ldlt_decompose<Rational>(gram, L, D))
    throw std::logic_error("enumerate_sublevel: LDL^T failed on a definite matrix");

  // f(d) = c0 + sum_m (w_m y_m - D_m y_m^2 / 2), y = L^T d, w = L^{-1} linear.
  VecR w(n);
  for (int m = 0; m < n; ++m) {
    Rational v = linear(m);
    for (int j = 0; j < m; ++j) v -= L(m, j) * w(j);
    w(m) = v;
  }
  // rem(m) = sum_{j<m} w_j^2 / (2 D_j): the best the free lower levels can add.
  std::vector<Rational> rem(n + 1, Rational(0));
  for (int m = 0; m < n; ++m) rem[m + 1] = rem[m] + w(m) * w(m) / (2 * D(m));

  std::vector<CorootVector> out;
  CorootVector d = CorootVector::Zero(n);

  // Fix coordinates from the last down; y_m = d_m + shift_m depends only on
  // d_{m+1..n-1}. partial = c0 + contributions of fixed levels.
  auto rec = [&](auto&& self, int m, const Rational& partial) -> void {
    if (m < 0) {
      if (partial >= 0) out.push_back(d);
      return;
    }
    const Rational budget = partial + rem[m];
    // D_m y^2 / 2 - w_m y <= budget; empty interval when disc < 0.
    const Rational disc = w(m) * w(m) + 2 * D(m) * budget;
    if (disc < 0) return;
    const Rational u = sqrt_upper(disc);
    Rational shift(0);
    for (int i = m + 1; i < n; ++i) shift += L(i, m) * Rational(d(i));
    const BigInt lo = ceil_int((w(m) - u) / D(m) - shift);
    const BigInt hi = floor_int((w(m) + u) / D(m) - shift);
    const long long from = lo < 0 ? 0 : to_ll(lo);
    if (hi < from) return;
    for (long long v = from; v <= to_ll(hi); ++v) {
      d(m) = static_cast<int>(v);
      const Rational y = Rational(v) + shift;
      self(self, m - 1, partial + w(m) * y - D(m) * y * y / 2);
    }
    d(m) = 0;
  };
  rec(rec, n - 1, c0);
  std::sort(out.begin(), out.end(), graded_lex_less);
  return out;
}

namespace {

VecR multiplicity_vector(const ProductSpec& spec) {
  VecR lin = VecR::Zero(spec.system.rank());
  for (int i : spec.indices) lin(i - 1) += 1;
  return lin;
}

DegreeSet filter_lifted(const ProductSpec& spec, const LiftMap& lift,
                        std::vector<CorootVector> candidates) {
  std::sort(candidates.begin(), candidates.end(), graded_lex_less);
  DegreeSet set;
  for (const auto& d : candidates) {
    const Rational val = objective(spec, lift.apply(d));
    if (val >= 0) {
      set.degrees.push_back(d);
      set.values.push_back(val);
    }
  }
  return set;
}

}  // namespace

DegreeSet admissible_degrees(const ProductSpec& spec, const LiftMap& lift) {
  if (!lift.identity()) {
    // Finite user-supplied domain: enumerate its keys directly.
    std::vector<CorootVector> keys;
    for (const auto& [k, unused] : lift.table()) {
      CorootVector d(static_cast<Eigen::Index>(k.size()));
      for (size_t j = 0; j < k.size(); ++j) {
        if (k[j] < 0) throw std::invalid_argument("LiftMap: key degree not effective");
        d(static_cast<Eigen::Index>(j)) = k[j];
      }
      keys.push_back(d);
    }
    return filter_lifted(spec, lift, std::move(keys));
  }

  const MatR gram = to_rational(spec.system.gram());
  VecR linear = multiplicity_vector(spec);
  if (spec.variant == Variant::SIMPLY_LACED_DISTINCT) {
    // Objective is exactly quadratic: sum_i (mult_i - 1) d_i - (d,d)/2.
    for (int i = 0; i < spec.system.rank(); ++i) linear(i) -= 1;
    auto degs = enumerate_sublevel(gram, linear, Rational(0));
    return filter_lifted(spec, lift, std::move(degs));
  }
  // GENERAL: r(d) >= 0, so { sum_k d_{i_k} - (d,d)/2 >= 0 } is a superset of the
  // admissible set; enumerate it, then filter with the exact objective.
  auto relaxed = enumerate_sublevel(gram, linear, Rational(0));
  return filter_lifted(spec, lift, std::move(relaxed));
}

DegreeBoundReport degree_bound_report(const ProductSpec& spec, const LiftMap& lift) {
  DegreeBoundReport rep;
  rep.set = admissible_degrees(spec, lift);
  rep.max_total_degree = 0;
  for (const auto& d : rep.set.degrees)
    rep.max_total_degree = std::max(rep.max_total_degree, static_cast<long long>(d.sum()));
  return rep;
}

Rational lambda_lower_bound(const MatR& gram) {
  const MatR inv = inverse<Rational>(gram);
  Rational norm_inf(0);
  for (Eigen::Index i = 0; i < inv.rows(); ++i) {
    Rational row(0);
    for (Eigen::Index j = 0; j < inv.cols(); ++j) row += abs(inv(i, j));
    norm_inf = std::max(norm_inf, row);
  }
  return 1 / norm_inf;
}

long long oracle_box_radius(const ProductSpec& spec) {
  const Rational lam = lambda_lower_bound(to_rational(spec.system.gram()));
  const Rational bound = Rational(2 * static_cast<long long>(spec.indices.size())) / lam;
  return to_ll(floor_int(bound)) + 1;
}

DegreeSet box_scan_admissible(const ProductSpec& spec, const LiftMap& lift) {
  if (!lift.identity()) return admissible_degrees(spec, lift);

  const long long radius = oracle_box_radius(spec);
  const int n = spec.system.rank();
  const auto& g = spec.system.gram();
  std::vector<long long> mult(n, 0);
  for (int i : spec.indices) ++mult[i - 1];
  const bool general = spec.variant == Variant::GENERAL;

  // Plain odometer over [0, radius]^n with integer evaluation; survivors only.
  std::vector<CorootVector> hits;
  CorootVector d = CorootVector::Zero(n);
  while (true) {
    long long nrm = 0, lin = 0, extra = 0;
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) nrm += static_cast<long long>(g(a, b)) * d(a) * d(b);
      lin += mult[a] * d(a);
      extra += general ? (d(a) > 0 ? 1 : 0) : d(a);  // r(d) or (rho, d)
    }
    if (2 * lin - 2 * extra - nrm >= 0) hits.push_back(d);
    int t = 0;
    while (t < n && d(t) == radius) d(t++) = 0;
    if (t == n) break;
    ++d(t);
  }
  return filter_lifted(spec, lift, std::move(hits));
}

}  // namespace qk
