#include "qk/order_propagation.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

#include "qk/bordered_form.hpp"
#include "qk/linalg.hpp"

namespace qk {

std::string format_degree(const MultiDegree& d) {
  std::ostringstream os;
  os << "(";
  for (size_t i = 0; i < d.size(); ++i) os << (i ? "," : "") << d[i];
  os << ")";
  return os.str();
}

EffLattice::EffLattice(int s, std::vector<Eigen::VectorXi> functionals)
    : s_(s), p_(std::move(functionals)) {
  if (s_ < 1) throw std::invalid_argument("EffLattice: rank must be >= 1");
  if (p_.empty()) throw std::invalid_argument("EffLattice: at least one functional required");
  std::vector<bool> covered(static_cast<size_t>(s_), false);
  for (const auto& p : p_) {
    if (p.size() != s_) throw std::invalid_argument("EffLattice: functional rank mismatch");
    for (int v = 0; v < s_; ++v) {
      if (p[v] < 0) throw std::invalid_argument("EffLattice: functional not nef");
      if (p[v] > 0) covered[static_cast<size_t>(v)] = true;
    }
  }
  // Coverage of every coordinate is equivalent to p_i . d > 0 for some i at
  // every nonzero effective d.
  for (int v = 0; v < s_; ++v)
    if (!covered[static_cast<size_t>(v)])
      throw std::invalid_argument("EffLattice: no functional is positive on coordinate " +
                                  std::to_string(v + 1));
}

long long EffLattice::pair(int i, const MultiDegree& d) const {
  if (i < 0 || i >= k()) throw std::out_of_range("EffLattice: functional index");
  if (static_cast<int>(d.size()) != s_) throw std::invalid_argument("EffLattice: degree rank");
  long long acc = 0;
  for (int v = 0; v < s_; ++v) acc += static_cast<long long>(p_[static_cast<size_t>(i)][v]) * d[v];
  return acc;
}

long long EffLattice::max_pairing(const MultiDegree& d) const {
  long long best = pair(0, d);
  for (int i = 1; i < k(); ++i) best = std::max(best, pair(i, d));
  return best;
}

void validate_fundamental_solution(const FundamentalSolution& fs) {
  if (fs.lattice.s() != fs.coeffs.trunc().vars())
    throw std::invalid_argument("fundamental solution: lattice rank differs from series rank");
  MultiDegree zero(static_cast<size_t>(fs.lattice.s()), 0);
  MatQ t0 = fs.coeffs.coeff(zero);
  MatQ id = matq_identity(fs.dim());
  for (Eigen::Index i = 0; i < t0.rows(); ++i)
    for (Eigen::Index j = 0; j < t0.cols(); ++j)
      if (!(t0(i, j) == id(i, j)))
        throw std::invalid_argument("fundamental solution: degree-zero coefficient is not the identity");
  for (const auto& d : fs.coeffs.support()) {
    if (d == zero) continue;
    MatQ m = fs.coeffs.coeff(d);
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      for (Eigen::Index j = 0; j < m.cols(); ++j) {
        const RationalQ& e = m(i, j);
        if (e.is_zero()) continue;
        if (e.order_at_infinity() < Order(1))
          throw std::invalid_argument("fundamental solution: entry at degree " + format_degree(d) +
                                      " does not vanish at q = infinity");
        if (!e.regular_at_zero())
          throw std::invalid_argument("fundamental solution: entry at degree " + format_degree(d) +
                                      " is singular at q = 0");
        if (!poles_only_at_roots_of_unity(e))
          throw std::invalid_argument("fundamental solution: entry at degree " + format_degree(d) +
                                      " has a pole away from roots of unity");
      }
  }
}

QuadExt GrowthCertificate::gram_entry(int i, int j) const {
  return QuadExt(gram_rational(i, j), gram_root(i, j), N);
}

QuadExt GrowthCertificate::bound(const MultiDegree& d) const {
  if (static_cast<int>(d.size()) != vars())
    throw std::invalid_argument("certificate: degree rank mismatch");
  QuadExt acc(c);
  for (int i = 0; i < vars(); ++i) {
    if (d[static_cast<size_t>(i)] == 0) continue;
    Rational di(d[static_cast<size_t>(i)]);
    acc += QuadExt(m(i) * di);
    for (int j = 0; j < vars(); ++j) {
      if (d[static_cast<size_t>(j)] == 0) continue;
      acc += gram_entry(i, j) * QuadExt(di * Rational(d[static_cast<size_t>(j)]) / 2);
    }
  }
  return acc;
}

bool GrowthCertificate::positive_definite() const {
  int n = vars();
  Mat<QuadExt> g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = gram_entry(i, j);
  if (!is_symmetric(g)) return false;
  auto minors = leading_principal_minors(g);
  if (static_cast<int>(minors.size()) != n) return false;
  for (const auto& mi : minors)
    if (mi.sign() <= 0) return false;
  return true;
}

GrowthCertificate rational_certificate(const MatR& gram, const VecR& m, const Rational& c) {
  GrowthCertificate cert;
  cert.gram_rational = gram;
  cert.gram_root = MatR::Zero(gram.rows(), gram.cols());
  cert.N = 1;
  cert.m = m;
  cert.c = c;
  return cert;
}

static void require_box_within(const Box& box, const Box& trunc) {
  if (box.vars() != trunc.vars())
    throw std::invalid_argument("box rank differs from truncation rank");
  for (int v = 0; v < box.vars(); ++v)
    if (box.cap[static_cast<size_t>(v)] > trunc.cap[static_cast<size_t>(v)])
      throw std::invalid_argument("box exceeds series truncation");
}

bool check_quadratic_growth(const FundamentalSolution& fs, const GrowthCertificate& cert,
                            const Box& box, MultiDegree* witness) {
  require_box_within(box, fs.coeffs.trunc());
  if (cert.vars() != fs.lattice.s())
    throw std::invalid_argument("certificate rank differs from lattice rank");
  for (const auto& d : box.graded_degrees()) {
    Order o = matq_min_order(fs.coeffs.coeff(d));
    if (o.is_infinite()) continue;
    if (QuadExt(Rational(o.finite())) < cert.bound(d)) {
      if (witness) *witness = d;
      return false;
    }
  }
  return true;
}

const Extended<Rational>& OrderTable::at(const MultiDegree& d) const {
  auto it = values.find(d);
  if (it == values.end()) throw std::out_of_range("order table: degree not tabulated");
  return it->second;
}

static void validate_support_set(const std::vector<MultiDegree>& F, int s) {
  for (const auto& d : F) {
    if (static_cast<int>(d.size()) != s)
      throw std::invalid_argument("support degree " + format_degree(d) + " has wrong rank");
    if (!is_effective(d))
      throw std::invalid_argument("support degree " + format_degree(d) + " is not effective");
    if (total_degree(d) == 0)
      throw std::invalid_argument("support set must not contain the zero degree");
  }
}

OrderTable propagate_lower_bounds(const std::vector<MultiDegree>& F, const Rational& C,
                                  const EffLattice& lattice, const Box& box) {
  if (box.vars() != lattice.s()) throw std::invalid_argument("box rank differs from lattice rank");
  validate_support_set(F, lattice.s());
  OrderTable table;
  MultiDegree zero(static_cast<size_t>(lattice.s()), 0);
  for (const auto& d : box.graded_degrees()) {
    if (d == zero) {
      table.values[d] = Extended<Rational>(Rational(0));
      continue;
    }
    Extended<Rational> best = Extended<Rational>::infinity();
    MultiDegree rest;
    for (const auto& dp : F)
      if (degree_sub(d, dp, rest)) best = min(best, table.at(rest));
    table.values[d] =
        Extended<Rational>(Rational(lattice.max_pairing(d))) + best + Extended<Rational>(C);
  }
  return table;
}

GrowthCertificate construct_certificate(const std::vector<MultiDegree>& F, const Rational& C,
                                        const EffLattice& lattice, const Box& box) {
  if (F.empty()) throw std::invalid_argument("construct_certificate: empty support set");
  validate_support_set(F, lattice.s());
  if (box.vars() != lattice.s())
    throw std::invalid_argument("construct_certificate: box rank differs from lattice rank");
  const int s = lattice.s();
  const int k = lattice.k();

  // Integer gram of the functionals, (P^T P)_{uv} = sum_i p_i(u) p_i(v).
  Eigen::MatrixXi ptp = Eigen::MatrixXi::Zero(s, s);
  for (int i = 0; i < k; ++i)
    for (int u = 0; u < s; ++u)
      for (int v = 0; v < s; ++v) ptp(u, v) += lattice.functionals()[static_cast<size_t>(i)][u] *
                                               lattice.functionals()[static_cast<size_t>(i)][v];
  if (!is_positive_definite(to_rational(ptp)).verdict)
    throw std::invalid_argument(
        "construct_certificate: functionals do not span (P^T P is not positive definite)");

  // B^2 = max_{d in F} sum_i (p_i . d)^2.
  long long b_sq = 0;
  for (const auto& d : F) {
    long long nrm = 0;
    for (int i = 0; i < k; ++i) {
      long long u = lattice.pair(i, d);
      nrm += u * u;
    }
    b_sq = std::max(b_sq, nrm);
  }
  BigInt n_val = BigInt(k) * BigInt(b_sq);

  GrowthCertificate cert;
  cert.m = VecR::Zero(s);
  if (C < 0)
    for (int v = 0; v < s; ++v) cert.m(v) = C;
  cert.c = 0;
  // gram = P^T P / sqrt(N); when N is a perfect square the entries are plain
  // rationals and the radicand collapses to 1.
  BigInt root = isqrt(n_val);
  if (root * root == n_val) {
    cert.N = 1;
    cert.gram_root = MatR::Zero(s, s);
    cert.gram_rational = MatR(s, s);
    for (int u = 0; u < s; ++u)
      for (int v = 0; v < s; ++v) cert.gram_rational(u, v) = Rational(ptp(u, v)) / Rational(root);
  } else {
    cert.N = n_val;
    cert.gram_rational = MatR::Zero(s, s);
    cert.gram_root = MatR(s, s);
    for (int u = 0; u < s; ++u)
      for (int v = 0; v < s; ++v) cert.gram_root(u, v) = Rational(ptp(u, v)) / Rational(n_val);
  }

  // Degree-independent steps of the proof chain: for every d' in F,
  // m . d' <= C and ||d'|| <= B.
  for (const auto& dp : F) {
    Rational md = 0;
    for (int v = 0; v < s; ++v) md += cert.m(v) * Rational(dp[static_cast<size_t>(v)]);
    if (md > C)
      throw std::logic_error("construct_certificate: m does not satisfy m.d <= C at d = " +
                             format_degree(dp));
    long long nrm = 0;
    for (int i = 0; i < k; ++i) {
      long long v = lattice.pair(i, dp);
      nrm += v * v;
    }
    if (nrm > b_sq)
      throw std::logic_error("construct_certificate: ||d'|| exceeds B at d' = " +
                             format_degree(dp));
  }

  // Induction step at every nonzero d* in the box.
  MultiDegree zero(static_cast<size_t>(s), 0);
  for (const auto& dstar : box.graded_degrees()) {
    if (dstar == zero) continue;
    std::vector<long long> u(static_cast<size_t>(k));
    long long maxu = 0, uu = 0;
    for (int i = 0; i < k; ++i) {
      u[static_cast<size_t>(i)] = lattice.pair(i, dstar);
      maxu = std::max(maxu, u[static_cast<size_t>(i)]);
      uu += u[static_cast<size_t>(i)] * u[static_cast<size_t>(i)];
    }
    // ||d*||^2 <= k max_i (p_i . d*)^2.
    if (uu > static_cast<long long>(k) * maxu * maxu)
      throw std::logic_error("construct_certificate: norm bound fails at d* = " +
                             format_degree(dstar));
    Extended<QuadExt> best = Extended<QuadExt>::infinity();
    MultiDegree rest;
    for (const auto& dp : F) {
      // Cauchy-Schwarz for (P d*) . (P d'):
      long long uv = 0, vv = 0;
      for (int i = 0; i < k; ++i) {
        long long v = lattice.pair(i, dp);
        uv += u[static_cast<size_t>(i)] * v;
        vv += v * v;
      }
      if (uv * uv > uu * vv)
        throw std::logic_error("construct_certificate: Cauchy-Schwarz fails at d* = " +
                               format_degree(dstar) + ", d' = " + format_degree(dp));
      if (degree_sub(dstar, dp, rest)) best = min(best, Extended<QuadExt>(cert.bound(rest)));
    }
    if (best.is_infinite()) continue;  // no recursion reaches d*: T_d* is forced to vanish
    QuadExt lhs = QuadExt(maxu) + QuadExt(C) + best.finite();
    if (lhs < cert.bound(dstar))
      throw std::logic_error("construct_certificate: induction step fails at d* = " +
                             format_degree(dstar));
  }
  return cert;
}

ShiftConnection shift_connection(const FundamentalSolution& fs, const MatR& P,
                                 const Eigen::VectorXi& p) {
  if (p.size() != fs.lattice.s())
    throw std::invalid_argument("shift_connection: functional rank mismatch");
  for (int v = 0; v < p.size(); ++v)
    if (p[v] < 0) throw std::invalid_argument("shift_connection: p is not nef");
  if (P.rows() != fs.dim() || P.cols() != fs.dim())
    throw std::invalid_argument("shift_connection: pairing matrix shape mismatch");

  MatQ pq(P.rows(), P.cols());
  for (Eigen::Index i = 0; i < P.rows(); ++i)
    for (Eigen::Index j = 0; j < P.cols(); ++j) pq(i, j) = RationalQ(Rational(P(i, j)));

  NovikovSeries s_series = fs.coeffs.invert();
  NovikovSeries a = s_series * fs.coeffs.q_dilate(p).left_mul(pq);

  for (const auto& d : a.support()) {
    MatQ m = a.coeff(d);
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      for (Eigen::Index j = 0; j < m.cols(); ++j)
        if (!m(i, j).regular_at_zero())
          throw std::domain_error("shift_connection: coefficient at degree " + format_degree(d) +
                                  " is singular at q = 0");
  }
  return ShiftConnection{P, p, std::move(a)};
}

Rational OrderProfile::operator()(const MultiDegree& d) const {
  const int s = static_cast<int>(gram.rows());
  if (static_cast<int>(d.size()) != s) throw std::invalid_argument("order profile: degree rank");
  Rational acc = c;
  for (int i = 0; i < s; ++i) {
    if (d[static_cast<size_t>(i)] == 0) continue;
    Rational di(d[static_cast<size_t>(i)]);
    acc += m(i) * di;
    for (int j = 0; j < s; ++j)
      acc += gram(i, j) * di * Rational(d[static_cast<size_t>(j)]) / 2;
  }
  return acc;
}

// Uniform helper over the raw engine; implementation-defined distributions
// would break the bit-identical determinism contract.
static long long rand_range(std::mt19937_64& rng, long long lo, long long hi) {
  return lo + static_cast<long long>(rng() % static_cast<unsigned long long>(hi - lo + 1));
}

static Rational random_nonzero_rational(std::mt19937_64& rng, long long num_max,
                                        long long den_max) {
  Rational r(rand_range(rng, 1, num_max), rand_range(rng, 1, den_max));
  return rand_range(rng, 0, 1) ? r : -r;
}

FundamentalSolution generate_synthetic_T(const EffLattice& lattice, int dim,
                                         const OrderProfile& profile, std::uint64_t seed,
                                         const Box& trunc) {
  if (dim < 1) throw std::invalid_argument("generate_synthetic_T: dim must be >= 1");
  if (trunc.vars() != lattice.s())
    throw std::invalid_argument("generate_synthetic_T: truncation rank mismatch");
  MultiDegree zero(static_cast<size_t>(lattice.s()), 0);
  for (const auto& d : trunc.graded_degrees())
    if (!(d == zero) && profile(d) < 1)
      throw std::invalid_argument("generate_synthetic_T: order profile below 1 at degree " +
                                  format_degree(d));

  std::mt19937_64 rng(seed);
  NovikovSeries t(trunc, dim);
  t.set_coeff(zero, matq_identity(dim));
  for (const auto& d : trunc.graded_degrees()) {
    if (d == zero) continue;
    long long ord = to_ll(ceil_int(profile(d)));
    MatQ m = matq_zero(dim);
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) {
        long long shift = rand_range(rng, 0, 2);
        Poly num = Poly(random_nonzero_rational(rng, 9, 1)) *
                   Poly::monomial(static_cast<int>(shift));
        Poly den(Rational(1));
        long long deg_left = ord + shift;
        while (deg_left > 0) {
          long long seg = rand_range(rng, 1, std::min<long long>(3, deg_left));
          den = den * (Poly(Rational(1)) - Poly::monomial(static_cast<int>(seg)));
          deg_left -= seg;
        }
        m(i, j) = RationalQ(num, den);
      }
    t.set_coeff(d, m);
  }
  FundamentalSolution fs{lattice, std::move(t)};
  validate_fundamental_solution(fs);
  return fs;
}

DifferenceModuleInstance generate_difference_module_T(const EffLattice& lattice, int dim,
                                                      std::uint64_t seed, const Box& trunc) {
  if (dim < 1) throw std::invalid_argument("generate_difference_module_T: dim must be >= 1");
  if (trunc.vars() != lattice.s())
    throw std::invalid_argument("generate_difference_module_T: truncation rank mismatch");
  const int s = lattice.s();
  const int k = lattice.k();

  // Per-variable cap on the first-order equation's support so that the
  // connection's genuine support stays inside the truncation box:
  // the shifted products reach degree p_i(v) * max(F_v).
  std::vector<int> nmax(static_cast<size_t>(s));
  for (int v = 0; v < s; ++v) {
    int pmax = 0;
    for (int i = 0; i < k; ++i)
      pmax = std::max(pmax, lattice.functionals()[static_cast<size_t>(i)][v]);
    if (pmax == 0 || trunc.cap[static_cast<size_t>(v)] < pmax)
      throw std::invalid_argument("generate_difference_module_T: truncation too small");
    nmax[static_cast<size_t>(v)] = std::min(2, trunc.cap[static_cast<size_t>(v)] / pmax);
  }

  std::mt19937_64 rng(seed);
  // t_{j,v,m}: per matrix slot and variable, the solution of
  // t(qQ) = t(Q)(1 + sum_{n in F} alpha_n Q^n) coefficient by coefficient.
  std::vector<std::vector<std::vector<RationalQ>>> tcoef(static_cast<size_t>(dim));
  for (int j = 0; j < dim; ++j) {
    tcoef[static_cast<size_t>(j)].resize(static_cast<size_t>(s));
    for (int v = 0; v < s; ++v) {
      int cap = trunc.cap[static_cast<size_t>(v)];
      std::map<int, Poly> alpha;
      if (nmax[static_cast<size_t>(v)] == 1) {
        alpha[1] = Poly(random_nonzero_rational(rng, 5, 3));
      } else {
        switch (rand_range(rng, 0, 2)) {
          case 0:
            alpha[1] = Poly(random_nonzero_rational(rng, 5, 3));
            break;
          case 1:
            alpha[2] = Poly(random_nonzero_rational(rng, 5, 3));
            break;
          default:
            alpha[1] = Poly(random_nonzero_rational(rng, 5, 3));
            alpha[2] = Poly(random_nonzero_rational(rng, 5, 3));
            break;
        }
        // A q-factor on a degree >= 2 term keeps every t_m vanishing at
        // q = infinity (t_m picks up order m - deg alpha >= 1).
        if (alpha.count(2) && rand_range(rng, 0, 3) == 0)
          alpha[2] = alpha[2] * Poly::monomial(1);
      }
      auto& tv = tcoef[static_cast<size_t>(j)][static_cast<size_t>(v)];
      tv.assign(static_cast<size_t>(cap) + 1, RationalQ());
      tv[0] = RationalQ(1);
      for (int deg = 1; deg <= cap; ++deg) {
        RationalQ acc;
        for (const auto& [n, an] : alpha)
          if (n <= deg) acc += RationalQ(an) * tv[static_cast<size_t>(deg - n)];
        RationalQ denom(Poly::monomial(deg) - Poly(Rational(1)));
        tv[static_cast<size_t>(deg)] = acc / denom;
      }
    }
  }

  NovikovSeries t(trunc, dim);
  for (const auto& d : trunc.graded_degrees()) {
    MatQ m = matq_zero(dim);
    for (int j = 0; j < dim; ++j) {
      RationalQ prod(1);
      for (int v = 0; v < s; ++v) {
        prod *= tcoef[static_cast<size_t>(j)][static_cast<size_t>(v)]
                     [static_cast<size_t>(d[static_cast<size_t>(v)])];
        if (prod.is_zero()) break;
      }
      m(j, j) = prod;
    }
    t.set_coeff(d, m);
  }

  std::vector<MatR> pairing(static_cast<size_t>(k));
  for (int i = 0; i < k; ++i) {
    MatR pm = MatR::Zero(dim, dim);
    for (int j = 0; j < dim; ++j) pm(j, j) = random_nonzero_rational(rng, 7, 3);
    pairing[static_cast<size_t>(i)] = pm;
  }

  // Optional unimodular conjugation: mixes the diagonal structure away while
  // preserving every invariant checked downstream.
  if (dim >= 2 && rand_range(rng, 0, 1) == 1) {
    int a = static_cast<int>(rand_range(rng, 0, dim - 1));
    int b = static_cast<int>(rand_range(rng, 0, dim - 2));
    if (b >= a) ++b;
    Rational sgn_val = rand_range(rng, 0, 1) ? Rational(1) : Rational(-1);
    MatR u = MatR::Identity(dim, dim);
    u(a, b) = sgn_val;
    MatR uinv = MatR::Identity(dim, dim);
    uinv(a, b) = -sgn_val;
    MatQ uq(dim, dim), uinvq(dim, dim);
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) {
        uq(i, j) = RationalQ(u(i, j));
        uinvq(i, j) = RationalQ(uinv(i, j));
      }
    t = t.left_mul(uq).right_mul(uinvq);
    for (int i = 0; i < k; ++i) pairing[static_cast<size_t>(i)] = u * pairing[static_cast<size_t>(i)] * uinv;
  }

  DifferenceModuleInstance inst{FundamentalSolution{lattice, std::move(t)}, std::move(pairing),
                                {}, {}, Rational(0)};
  validate_fundamental_solution(inst.T);

  MultiDegree zero(static_cast<size_t>(s), 0);
  std::set<MultiDegree> supp;
  Extended<Rational> cmin = Extended<Rational>::infinity();
  for (int i = 0; i < k; ++i) {
    inst.connections.push_back(shift_connection(inst.T, inst.P[static_cast<size_t>(i)],
                                                lattice.functionals()[static_cast<size_t>(i)]));
    for (const auto& d : inst.connections.back().A.support()) {
      if (d == zero) continue;
      supp.insert(d);
      Order o = matq_min_order(inst.connections.back().A.coeff(d));
      cmin = min(cmin, Extended<Rational>(Rational(o.finite())));
    }
  }
  if (supp.empty())
    throw std::logic_error("generate_difference_module_T: all connections are constant");
  inst.F.assign(supp.begin(), supp.end());
  inst.C = cmin.finite();
  return inst;
}

std::map<MultiDegree, Extended<QuadExt>> vanishing_estimate(const GrowthCertificate& cert,
                                                            const EffLattice& lattice, int i,
                                                            const Box& box) {
  if (box.vars() != lattice.s() || cert.vars() != lattice.s())
    throw std::invalid_argument("vanishing_estimate: rank mismatch");
  std::vector<MultiDegree> degs = box.graded_degrees();
  MultiDegree zero(static_cast<size_t>(lattice.s()), 0);

  std::map<MultiDegree, QuadExt> f;
  long long kmax = 0;
  for (const auto& d : degs) {
    f.emplace(d, cert.bound(d));
    kmax = std::max(kmax, total_degree(d));
  }

  // M_k(d) = min over splittings of d into k nonzero effective parts of the
  // summed certificate bound; computed by repeated infimal convolution.
  using Ext = Extended<QuadExt>;
  std::map<MultiDegree, Ext> prev;
  for (const auto& d : degs) prev.emplace(d, d == zero ? Ext(QuadExt(0)) : Ext::infinity());
  std::map<MultiDegree, Ext> shat;
  for (const auto& d : degs) shat.emplace(d, d == zero ? Ext(QuadExt(0)) : Ext::infinity());

  for (long long k = 1; k <= kmax; ++k) {
    std::map<MultiDegree, Ext> cur;
    for (const auto& d : degs) {
      Ext best = Ext::infinity();
      MultiDegree rest;
      for (const auto& e : degs) {
        if (e == zero || !degree_sub(d, e, rest)) continue;
        best = min(best, Ext(f.at(e)) + prev.at(rest));
      }
      cur.emplace(d, best);
      if (!(d == zero)) {
        Ext cand = max(Ext(QuadExt(k)), best);
        auto& slot = shat.at(d);
        slot = min(slot, cand);
      }
    }
    prev = std::move(cur);
  }

  std::map<MultiDegree, Ext> est;
  for (const auto& d : degs) {
    Ext best = Ext::infinity();
    MultiDegree rest;
    for (const auto& dpp : degs) {
      if (!degree_sub(d, dpp, rest)) continue;
      best = min(best, (shat.at(rest) + Ext(f.at(dpp))) - QuadExt(lattice.pair(i, dpp)));
    }
    est.emplace(d, best);
  }
  return est;
}

}  // namespace qk
