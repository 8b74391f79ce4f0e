#include "qk/root_system.hpp"

#include <stdexcept>

namespace qk {

Family family_from_char(char c) {
  switch (c) {
    case 'A': return Family::A;
    case 'B': return Family::B;
    case 'C': return Family::C;
    case 'D': return Family::D;
    case 'E': return Family::E;
    case 'F': return Family::F;
    case 'G': return Family::G;
    default: throw std::invalid_argument(std::string("unknown family '") + c + "'");
  }
}

namespace {

void check_rank(RootSystemType t) {
  const int n = t.rank;
  bool ok = false;
  switch (t.family) {
    case Family::A: ok = n >= 1; break;
    case Family::B: ok = n >= 2; break;
    case Family::C: ok = n >= 2; break;
    case Family::D: ok = n >= 3; break;
    case Family::E: ok = n >= 6 && n <= 8; break;
    case Family::F: ok = n == 4; break;
    case Family::G: ok = n == 2; break;
  }
  if (!ok) throw std::invalid_argument("invalid rank for family: " + t.name());
}

// gram matrices per family, Bourbaki numbering. Diagonal entries: 2 for short
// roots, 4 for long roots in B/C/F, 6 for the long root of G2.
Eigen::MatrixXi gram_of(RootSystemType t) {
  check_rank(t);
  const int n = t.rank;
  Eigen::MatrixXi g = Eigen::MatrixXi::Zero(n, n);
  auto chain = [&](int from, int to, int off) {
    for (int i = from; i < to; ++i) {
      g(i, i + 1) = off;
      g(i + 1, i) = off;
    }
  };
  switch (t.family) {
    case Family::A:
      g.diagonal().setConstant(2);
      chain(0, n - 1, -1);
      break;
    case Family::B:  // long roots 1..n-1, short root n
      g.diagonal().setConstant(4);
      g(n - 1, n - 1) = 2;
      chain(0, n - 1, -2);
      break;
    case Family::C:  // short roots 1..n-1, long root n
      g.diagonal().setConstant(2);
      g(n - 1, n - 1) = 4;
      chain(0, n - 2, -1);
      g(n - 2, n - 1) = -2;
      g(n - 1, n - 2) = -2;
      break;
    case Family::D:
      g.diagonal().setConstant(2);
      chain(0, n - 2, -1);
      g(n - 3, n - 1) = -1;
      g(n - 1, n - 3) = -1;
      break;
    case Family::E: {
      g.diagonal().setConstant(2);
      const int edges[][2] = {{1, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}, {7, 8}, {2, 4}};
      for (auto [a, b] : edges)
        if (a <= n && b <= n) {
          g(a - 1, b - 1) = -1;
          g(b - 1, a - 1) = -1;
        }
      break;
    }
    case Family::F:
      g.resize(4, 4);
      g << 4, -2, 0, 0, -2, 4, -2, 0, 0, -2, 2, -1, 0, 0, -1, 2;
      break;
    case Family::G:  // (long, short)
      g.resize(2, 2);
      g << 6, -3, -3, 2;
      break;
  }
  return g;
}

}  // namespace

RootSystem::RootSystem(RootSystemType type) : RootSystem(std::vector<RootSystemType>{type}) {}

RootSystem::RootSystem(const std::vector<RootSystemType>& factors) : factors_(factors) {
  if (factors.empty()) throw std::invalid_argument("RootSystem: no factors");
  int n = 0;
  for (auto& f : factors) {
    check_rank(f);
    n += f.rank;
  }
  gram_ = Eigen::MatrixXi::Zero(n, n);
  cartan_ = Eigen::MatrixXi::Zero(n, n);
  int off = 0;
  for (auto& f : factors) {
    Eigen::MatrixXi g = gram_of(f);
    gram_.block(off, off, f.rank, f.rank) = g;
    // cartan = D^{-1} gram with D = diag(gram_ii / 2); rows scale by 2/gram_ii
    for (int i = 0; i < f.rank; ++i)
      for (int j = 0; j < f.rank; ++j) {
        const int num = 2 * g(i, j);
        if (num % g(i, i) != 0) throw std::logic_error("non-integer Cartan entry");
        cartan_(off + i, off + j) = num / g(i, i);
      }
    off += f.rank;
  }
}

const RootSystemType& RootSystem::type() const {
  if (!simple()) throw std::logic_error("type(): reducible system, use factors()");
  return factors_[0];
}

bool RootSystem::simply_laced() const {
  for (auto& f : factors_)
    if (!f.simply_laced()) return false;
  return true;
}

bool RootSystem::has_E8_factor() const {
  for (auto& f : factors_)
    if (f.family == Family::E && f.rank == 8) return true;
  return false;
}

VecR RootSystem::symmetrizer() const {
  VecR d(rank());
  for (int i = 0; i < rank(); ++i) d(i) = Rational(gram_(i, i)) / 2;
  return d;
}

long long pairing(const CorootVector& d, const WeightVector& lambda) {
  if (d.size() != lambda.size()) throw std::invalid_argument("pairing: rank mismatch");
  long long s = 0;
  for (Eigen::Index i = 0; i < d.size(); ++i) s += static_cast<long long>(d(i)) * lambda(i);
  return s;
}

long long norm(const RootSystem& sys, const CorootVector& d) {
  if (d.size() != sys.rank()) throw std::invalid_argument("norm: rank mismatch");
  long long s = 0;
  for (Eigen::Index i = 0; i < d.size(); ++i)
    for (Eigen::Index j = 0; j < d.size(); ++j)
      s += static_cast<long long>(sys.gram()(i, j)) * d(i) * d(j);
  return s;
}

int support_size(const CorootVector& d) {
  int r = 0;
  for (Eigen::Index i = 0; i < d.size(); ++i) {
    if (d(i) < 0) throw std::invalid_argument("support_size: negative coordinate");
    if (d(i) > 0) ++r;
  }
  return r;
}

WeightVector rho(const RootSystem& sys) { return WeightVector::Ones(sys.rank()); }

long long m_exponent(const RootSystem& sys, const CorootVector& d) {
  return support_size(d) + norm(sys, d) / 2;
}

long long k_exponent(const RootSystem& sys, const CorootVector& d) {
  if (!sys.simply_laced())
    throw std::invalid_argument("k_exponent: defined for simply-laced types only");
  support_size(d);  // validates d >= 0
  return pairing(d, rho(sys)) + norm(sys, d) / 2;
}

}  // namespace qk
