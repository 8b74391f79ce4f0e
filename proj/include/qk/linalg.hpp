#pragma once

#include <Eigen/Core>

#include <optional>
#include <stdexcept>
#include <vector>

namespace qk {

// Exact dense kernels, templated on scalar. Instantiated with BigInt (integer
// matrices, fraction-free), Rational, QuadExt and RationalQ. No pivot-magnitude
// heuristics anywhere: arithmetic is exact, so any nonzero pivot works.

template <class S>
using Mat = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;
template <class S>
using Vec = Eigen::Matrix<S, Eigen::Dynamic, 1>;

// Determinant by Bareiss elimination with row pivoting. Every division is
// exact over an integral domain, so S = BigInt stays integral throughout.
template <class S>
S determinant(Mat<S> a) {
  const Eigen::Index n = a.rows();
  if (n != a.cols()) throw std::invalid_argument("determinant: matrix not square");
  if (n == 0) return S(1);
  S prev(1);
  bool negate = false;
  for (Eigen::Index k = 0; k + 1 < n; ++k) {
    if (a(k, k) == S(0)) {
      Eigen::Index p = k + 1;
      while (p < n && a(p, k) == S(0)) ++p;
      if (p == n) return S(0);
      a.row(k).swap(a.row(p));
      negate = !negate;
    }
    for (Eigen::Index i = k + 1; i < n; ++i)
      for (Eigen::Index j = k + 1; j < n; ++j)
        a(i, j) = (a(k, k) * a(i, j) - a(i, k) * a(k, j)) / prev;
    prev = a(k, k);
  }
  S det = a(n - 1, n - 1);
  return negate ? S(-det) : det;
}

// Leading principal minors by one unpivoted Bareiss sweep: after step k the
// pivot equals the (k+1)x(k+1) leading minor. Stops early on a zero pivot
// (later minors would need pivoting, and every caller has already learned
// what it needs: the matrix is not positive definite).
template <class S>
std::vector<S> leading_principal_minors(Mat<S> a) {
  const Eigen::Index n = a.rows();
  if (n != a.cols()) throw std::invalid_argument("minors: matrix not square");
  std::vector<S> minors;
  S prev(1);
  for (Eigen::Index k = 0; k < n; ++k) {
    minors.push_back(a(k, k));
    if (a(k, k) == S(0)) break;
    for (Eigen::Index i = k + 1; i < n; ++i)
      for (Eigen::Index j = k + 1; j < n; ++j)
        a(i, j) = (a(k, k) * a(i, j) - a(i, k) * a(k, j)) / prev;
    prev = a(k, k);
  }
  return minors;
}

template <class S>
bool is_symmetric(const Mat<S>& a) {
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = i + 1; j < a.cols(); ++j)
      if (a(i, j) != a(j, i)) return false;
  return a.rows() == a.cols();
}

// Exact LDL^T of a symmetric matrix: M = L D L^T with L unit lower triangular.
// Returns false on a zero pivot. All pivots positive iff M is positive definite.
template <class S>
bool ldlt_decompose(const Mat<S>& m, Mat<S>& lower, Vec<S>& diag) {
  const Eigen::Index n = m.rows();
  lower = Mat<S>::Zero(n, n);
  diag = Vec<S>(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    S d = m(j, j);
    for (Eigen::Index k = 0; k < j; ++k) d -= lower(j, k) * lower(j, k) * diag(k);
    if (d == S(0)) return false;
    diag(j) = d;
    lower(j, j) = S(1);
    for (Eigen::Index i = j + 1; i < n; ++i) {
      S v = m(i, j);
      for (Eigen::Index k = 0; k < j; ++k) v -= lower(i, k) * lower(j, k) * diag(k);
      lower(i, j) = v / d;
    }
  }
  return true;
}

// Gauss-Jordan inverse over a field scalar; first nonzero pivot per column.
template <class S>
std::optional<Mat<S>> try_inverse(Mat<S> a) {
  const Eigen::Index n = a.rows();
  if (n != a.cols()) throw std::invalid_argument("inverse: matrix not square");
  Mat<S> inv = Mat<S>::Identity(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    Eigen::Index p = k;
    while (p < n && a(p, k) == S(0)) ++p;
    if (p == n) return std::nullopt;
    if (p != k) {
      a.row(k).swap(a.row(p));
      inv.row(k).swap(inv.row(p));
    }
    const S piv = a(k, k);
    for (Eigen::Index j = 0; j < n; ++j) {
      a(k, j) = a(k, j) / piv;
      inv(k, j) = inv(k, j) / piv;
    }
    for (Eigen::Index i = 0; i < n; ++i) {
      if (i == k || a(i, k) == S(0)) continue;
      const S f = a(i, k);
      for (Eigen::Index j = 0; j < n; ++j) {
        a(i, j) = a(i, j) - f * a(k, j);
        inv(i, j) = inv(i, j) - f * inv(k, j);
      }
    }
  }
  return inv;
}

template <class S>
Mat<S> inverse(const Mat<S>& a) {
  auto inv = try_inverse(a);
  if (!inv) throw std::domain_error("inverse: singular matrix");
  return *inv;
}

}  // namespace qk
