#include "qk/novikov.hpp"

#include <algorithm>
#include <stdexcept>

#include "qk/linalg.hpp"

namespace qk {

long long total_degree(const MultiDegree& d) {
  long long t = 0;
  for (int v : d) t += v;
  return t;
}

bool is_effective(const MultiDegree& d) {
  return std::all_of(d.begin(), d.end(), [](int v) { return v >= 0; });
}

MultiDegree degree_sum(const MultiDegree& a, const MultiDegree& b) {
  if (a.size() != b.size()) throw std::invalid_argument("degree_sum: rank mismatch");
  MultiDegree r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

bool degree_sub(const MultiDegree& a, const MultiDegree& b, MultiDegree& out) {
  if (a.size() != b.size()) throw std::invalid_argument("degree_sub: rank mismatch");
  out.resize(a.size());
  for (size_t i = 0; i < a.size(); ++i) {
    out[i] = a[i] - b[i];
    if (out[i] < 0) return false;
  }
  return true;
}

Box::Box(std::vector<int> caps) : cap(std::move(caps)) {
  if (cap.empty()) throw std::invalid_argument("Box: at least one variable required");
  for (int c : cap)
    if (c < 0) throw std::invalid_argument("Box: negative cap");
}

bool Box::contains(const MultiDegree& d) const {
  if (d.size() != cap.size()) return false;
  for (size_t i = 0; i < cap.size(); ++i)
    if (d[i] < 0 || d[i] > cap[i]) return false;
  return true;
}

std::vector<MultiDegree> Box::graded_degrees() const {
  std::vector<MultiDegree> all;
  MultiDegree cur(cap.size(), 0);
  for (;;) {
    all.push_back(cur);
    size_t i = 0;
    while (i < cap.size() && cur[i] == cap[i]) cur[i++] = 0;
    if (i == cap.size()) break;
    ++cur[i];
  }
  std::sort(all.begin(), all.end(), [](const MultiDegree& a, const MultiDegree& b) {
    long long ta = total_degree(a), tb = total_degree(b);
    if (ta != tb) return ta < tb;
    return a < b;
  });
  return all;
}

MatQ matq_zero(int dim) { return MatQ::Constant(dim, dim, RationalQ()); }

MatQ matq_identity(int dim) {
  MatQ m = matq_zero(dim);
  for (int i = 0; i < dim; ++i) m(i, i) = RationalQ(1);
  return m;
}

MatQ matq_mul(const MatQ& a, const MatQ& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matq_mul: shape mismatch");
  MatQ r = MatQ::Constant(a.rows(), b.cols(), RationalQ());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index k = 0; k < a.cols(); ++k) {
      if (a(i, k).is_zero()) continue;
      for (Eigen::Index j = 0; j < b.cols(); ++j) {
        if (b(k, j).is_zero()) continue;
        r(i, j) += a(i, k) * b(k, j);
      }
    }
  return r;
}

bool matq_is_zero(const MatQ& m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      if (!m(i, j).is_zero()) return false;
  return true;
}

Order matq_min_order(const MatQ& m) {
  Order best = Order::infinity();
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) best = min(best, m(i, j).order_at_infinity());
  return best;
}

NovikovSeries::NovikovSeries(Box trunc, int dim) : trunc_(std::move(trunc)), dim_(dim) {
  if (dim_ < 1) throw std::invalid_argument("NovikovSeries: dimension must be >= 1");
}

NovikovSeries NovikovSeries::identity(Box trunc, int dim) {
  NovikovSeries s(std::move(trunc), dim);
  s.set_coeff(MultiDegree(s.trunc_.vars(), 0), matq_identity(dim));
  return s;
}

MatQ NovikovSeries::coeff(const MultiDegree& d) const {
  auto it = coeffs_.find(d);
  if (it == coeffs_.end()) return matq_zero(dim_);
  return it->second;
}

void NovikovSeries::set_coeff(const MultiDegree& d, const MatQ& m) {
  if (!trunc_.contains(d)) throw std::out_of_range("NovikovSeries: degree outside truncation");
  if (m.rows() != dim_ || m.cols() != dim_)
    throw std::invalid_argument("NovikovSeries: coefficient shape mismatch");
  if (matq_is_zero(m))
    coeffs_.erase(d);
  else
    coeffs_[d] = m;
}

bool NovikovSeries::coeff_is_zero(const MultiDegree& d) const {
  return coeffs_.find(d) == coeffs_.end();
}

std::vector<MultiDegree> NovikovSeries::support() const {
  std::vector<MultiDegree> s;
  for (const auto& [d, m] : coeffs_) s.push_back(d);
  std::sort(s.begin(), s.end(), [](const MultiDegree& a, const MultiDegree& b) {
    long long ta = total_degree(a), tb = total_degree(b);
    if (ta != tb) return ta < tb;
    return a < b;
  });
  return s;
}

static void require_compatible(const NovikovSeries& a, const NovikovSeries& b) {
  if (a.trunc().cap != b.trunc().cap || a.dim() != b.dim())
    throw std::invalid_argument("NovikovSeries: incompatible operands");
}

NovikovSeries operator+(const NovikovSeries& a, const NovikovSeries& b) {
  require_compatible(a, b);
  NovikovSeries r(a.trunc(), a.dim());
  for (const auto& d : a.trunc().graded_degrees()) {
    MatQ m = a.coeff(d);
    MatQ n = b.coeff(d);
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) += n(i, j);
    r.set_coeff(d, m);
  }
  return r;
}

NovikovSeries operator-(const NovikovSeries& a, const NovikovSeries& b) {
  require_compatible(a, b);
  NovikovSeries r(a.trunc(), a.dim());
  for (const auto& d : a.trunc().graded_degrees()) {
    MatQ m = a.coeff(d);
    MatQ n = b.coeff(d);
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) -= n(i, j);
    r.set_coeff(d, m);
  }
  return r;
}

NovikovSeries operator*(const NovikovSeries& a, const NovikovSeries& b) {
  require_compatible(a, b);
  NovikovSeries r(a.trunc(), a.dim());
  std::vector<MultiDegree> sa = a.support(), sb = b.support();
  std::map<MultiDegree, MatQ> acc;
  for (const auto& da : sa) {
    MatQ ma = a.coeff(da);
    for (const auto& db : sb) {
      MultiDegree d = degree_sum(da, db);
      if (!a.trunc().contains(d)) continue;
      MatQ prod = matq_mul(ma, b.coeff(db));
      auto it = acc.find(d);
      if (it == acc.end()) {
        acc.emplace(d, std::move(prod));
      } else {
        for (Eigen::Index i = 0; i < prod.rows(); ++i)
          for (Eigen::Index j = 0; j < prod.cols(); ++j) it->second(i, j) += prod(i, j);
      }
    }
  }
  for (const auto& [d, m] : acc) r.set_coeff(d, m);
  return r;
}

bool operator==(const NovikovSeries& a, const NovikovSeries& b) {
  if (a.trunc().cap != b.trunc().cap || a.dim() != b.dim()) return false;
  for (const auto& d : a.trunc().graded_degrees()) {
    MatQ m = a.coeff(d), n = b.coeff(d);
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      for (Eigen::Index j = 0; j < m.cols(); ++j)
        if (!(m(i, j) == n(i, j))) return false;
  }
  return true;
}

NovikovSeries NovikovSeries::left_mul(const MatQ& m) const {
  NovikovSeries r(trunc_, dim_);
  for (const auto& [d, c] : coeffs_) r.set_coeff(d, matq_mul(m, c));
  return r;
}

NovikovSeries NovikovSeries::right_mul(const MatQ& m) const {
  NovikovSeries r(trunc_, dim_);
  for (const auto& [d, c] : coeffs_) r.set_coeff(d, matq_mul(c, m));
  return r;
}

NovikovSeries NovikovSeries::invert() const {
  MultiDegree zero(trunc_.vars(), 0);
  auto s0opt = try_inverse<RationalQ>(coeff(zero));
  if (!s0opt)
    throw std::domain_error("NovikovSeries::invert: degree-zero coefficient is singular");
  const MatQ& s0 = *s0opt;
  NovikovSeries s(trunc_, dim_);
  s.set_coeff(zero, s0);
  for (const auto& d : trunc_.graded_degrees()) {
    if (d == zero) continue;
    MatQ acc = matq_zero(dim_);
    bool any = false;
    for (const auto& [dp, tdp] : coeffs_) {
      if (dp == zero) continue;
      MultiDegree rest;
      if (!degree_sub(d, dp, rest)) continue;
      MatQ term = matq_mul(tdp, s.coeff(rest));
      for (Eigen::Index i = 0; i < dim_; ++i)
        for (Eigen::Index j = 0; j < dim_; ++j) acc(i, j) += term(i, j);
      any = true;
    }
    if (!any) continue;
    MatQ sd = matq_mul(s0, acc);
    for (Eigen::Index i = 0; i < dim_; ++i)
      for (Eigen::Index j = 0; j < dim_; ++j) sd(i, j) = -sd(i, j);
    s.set_coeff(d, sd);
  }
  return s;
}

NovikovSeries NovikovSeries::q_dilate(const Eigen::VectorXi& p) const {
  if (p.size() != trunc_.vars())
    throw std::invalid_argument("q_dilate: functional rank mismatch");
  NovikovSeries r(trunc_, dim_);
  for (const auto& [d, m] : coeffs_) {
    long long e = 0;
    for (int v = 0; v < trunc_.vars(); ++v) e += static_cast<long long>(p[v]) * d[v];
    MatQ md = m;
    for (Eigen::Index i = 0; i < dim_; ++i)
      for (Eigen::Index j = 0; j < dim_; ++j) md(i, j) = md(i, j).times_qpow(e);
    r.set_coeff(d, md);
  }
  return r;
}

}  // namespace qk
