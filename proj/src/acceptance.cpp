#include "qk/acceptance.hpp"

#include <chrono>
#include <functional>
#include <iomanip>
#include <random>
#include <sstream>
#include <vector>

#include "qk/bordered_form.hpp"
#include "qk/degree_enumeration.hpp"
#include "qk/nilpotent_series.hpp"
#include "qk/order_propagation.hpp"
#include "qk/root_system.hpp"

namespace qk {

namespace {

struct Check {
  bool ok = true;
  std::ostringstream detail;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail.str(what);
    }
  }
};

bool vec_eq(const Eigen::VectorXi& a, const Eigen::VectorXi& b) {
  return a.size() == b.size() && (a.array() == b.array()).all();
}

std::vector<RootSystemType> appendix_sweep_types() {
  std::vector<RootSystemType> types;
  for (int n = 1; n <= 12; ++n) types.push_back({Family::A, n});
  for (int n = 2; n <= 12; ++n) types.push_back({Family::B, n});
  for (int n = 2; n <= 12; ++n) types.push_back({Family::C, n});
  for (int n = 3; n <= 12; ++n) types.push_back({Family::D, n});
  types.push_back({Family::E, 6});
  types.push_back({Family::E, 7});
  types.push_back({Family::F, 4});
  types.push_back({Family::G, 2});
  return types;
}

// ---- criterion 1: symmetrized Cartan determinants -------------------------

bool criterion_table(Check& c) {
  auto expect = [&](RootSystemType t, long long want) {
    BigInt got = det_2AR(RootSystem(t));
    c.require(got == want, t.name() + ": det " + got.str() + " != " + std::to_string(want));
  };
  for (int n = 1; n <= 8; ++n) expect({Family::A, n}, n + 1);
  for (int n = 2; n <= 8; ++n) expect({Family::B, n}, 1LL << n);
  for (int n = 2; n <= 8; ++n) expect({Family::C, n}, 4);
  for (int n = 3; n <= 8; ++n) expect({Family::D, n}, 4);
  expect({Family::E, 6}, 3);
  expect({Family::E, 7}, 2);
  expect({Family::E, 8}, 1);
  expect({Family::F, 4}, 4);
  expect({Family::G, 2}, 3);
  if (c.ok) c.detail << "30 determinants exact";
  return c.ok;
}

// ---- criterion 2: bordered-form sweep off E8 -------------------------------

bool criterion_sweep(Check& c) {
  int count = 0;
  for (const auto& t : appendix_sweep_types()) {
    RootSystem sys(t);
    for (int i = 1; i <= sys.rank() && c.ok; ++i) {
      c.require(det_2AQ(sys, i) > 0, t.name() + " i=" + std::to_string(i) + ": det <= 0");
      auto cert = is_positive_definite(to_rational(make_bordered(sys, i).matrix_2AQ));
      c.require(cert.verdict, t.name() + " i=" + std::to_string(i) + ": not positive definite");
      ++count;
    }
    if (!c.ok) break;
  }
  if (c.ok) c.detail << count << " bordered forms positive definite";
  return c.ok;
}

// ---- criterion 3: the E8 fork falsification --------------------------------

bool criterion_e8(Check& c) {
  RootSystem e8({Family::E, 8});
  const int fork = 4;  // the degree-3 node
  c.require(det_2AQ(e8, fork) == -14, "fork determinant != -14");

  auto dets = vertex_scan(e8);
  const long long expected[8] = {12, 8, 2, -14, -4, 4, 10, 14};
  for (int i = 0; i < 8; ++i)
    c.require(dets[static_cast<size_t>(i)] == expected[i],
              "vertex " + std::to_string(i + 1) + ": det " + dets[static_cast<size_t>(i)].str());
  c.require(!verify_lemma_appA(e8, fork), "support sweep unexpectedly positive definite at fork");

  // Two-variable form violation inside [0,6]^8: some real z makes
  // (d,d)/2 - d_i z + r z^2 negative.
  auto form = form_violation_search(e8, fork, 6);
  c.require(form.has_value(), "no form violation found in [0,6]^8");
  if (form) {
    c.require(form->value < 0, "form violation value not negative");
    long long nrm = norm(e8, form->d);
    long long di = form->d(fork - 1);
    c.require(di * di > 2LL * support_size(form->d) * nrm, "form violation condition fails");
  }

  // The z = 1 inequality itself has no violator with coordinates <= 6 (the
  // exhaustive scan is the proof); the smallest violators need radius 10.
  auto bf6 = brute_force_inequality(e8, fork, 6);
  c.require(bf6.holds, "unexpected z=1 violator within [0,6]^8");
  auto bf10 = brute_force_inequality(e8, fork, 10);
  c.require(!bf10.holds, "no z=1 violator within [0,10]^8");
  if (bf10.violating_d) {
    const auto& d = *bf10.violating_d;
    long long lhs = norm(e8, d) / 2 + support_size(d);
    long long rhs = d(fork - 1);
    c.require(lhs < rhs || (lhs == rhs && support_size(d) > 0), "reported violator does not violate");
    if (c.ok) {
      c.detail << "fork det -14; vertex dets confirmed; form witness d=(";
      for (int i = 0; i < 8; ++i) c.detail << (i ? "," : "") << form->d(i);
      c.detail << ") z*=" << form->z_star << "; z=1 witness at radius 10 d=(";
      for (int i = 0; i < 8; ++i) c.detail << (i ? "," : "") << d(i);
      c.detail << "), none within radius 6";
    }
  }
  return c.ok;
}

// ---- criterion 4: oracle vs certificate agreement ---------------------------

bool criterion_agreement(Check& c) {
  std::vector<RootSystemType> types;
  for (int n = 1; n <= 4; ++n) types.push_back({Family::A, n});
  for (int n = 2; n <= 4; ++n) types.push_back({Family::B, n});
  for (int n = 2; n <= 4; ++n) types.push_back({Family::C, n});
  for (int n = 3; n <= 4; ++n) types.push_back({Family::D, n});
  types.push_back({Family::G, 2});
  types.push_back({Family::F, 4});
  types.push_back({Family::E, 6});
  types.push_back({Family::E, 7});
  int count = 0;
  for (const auto& t : types) {
    RootSystem sys(t);
    for (int i = 1; i <= sys.rank() && c.ok; ++i) {
      bool cert = verify_lemma_appA(sys, i);
      auto bf = brute_force_inequality(sys, i, 6);
      c.require(cert, t.name() + " i=" + std::to_string(i) + ": certificate failed");
      c.require(bf.holds, t.name() + " i=" + std::to_string(i) + ": brute force found violator");
      ++count;
    }
    if (!c.ok) break;
  }
  if (c.ok) c.detail << count << " (type, index) pairs agree";
  return c.ok;
}

// ---- criterion 5: degree enumeration ground truths --------------------------

bool criterion_degrees(Check& c) {
  RootSystem a1({Family::A, 1});
  {
    ProductSpec spec(a1, {1}, Variant::GENERAL);
    auto set = admissible_degrees(spec);
    c.require(set.degrees.size() == 1 && set.degrees[0](0) == 0, "A1 x{1}: expected exactly {0}");
  }
  {
    ProductSpec spec(a1, {1, 1}, Variant::GENERAL);
    auto set = admissible_degrees(spec);
    c.require(set.degrees.size() == 2 && set.degrees[0](0) == 0 && set.degrees[1](0) == 1,
              "A1 x{1,1}: expected {0, 1}");
  }

  // Distinct-index products over simply-laced types collapse to degree zero.
  std::vector<RootSystemType> sl_types = {{Family::A, 1}, {Family::A, 2}, {Family::A, 3},
                                          {Family::A, 4}, {Family::D, 4}};
  int collapsed = 0;
  for (const auto& t : sl_types) {
    RootSystem sys(t);
    const int n = sys.rank();
    for (unsigned mask = 1; mask < (1u << n) && c.ok; ++mask) {
      std::vector<int> idx;
      for (int b = 0; b < n; ++b)
        if (mask & (1u << b)) idx.push_back(b + 1);
      ProductSpec spec(sys, idx, Variant::SIMPLY_LACED_DISTINCT);
      auto set = admissible_degrees(spec);
      c.require(set.degrees.size() == 1 && set.degrees[0].isZero(),
                t.name() + ": distinct-index support not {0}");
      ++collapsed;
    }
    if (!c.ok) break;
  }

  // Randomized agreement with the exhaustive box oracle.
  std::vector<RootSystemType> rnd_types = {{Family::A, 1}, {Family::A, 2}, {Family::A, 3},
                                           {Family::A, 4}, {Family::B, 2}, {Family::B, 3},
                                           {Family::B, 4}, {Family::C, 2}, {Family::C, 3},
                                           {Family::C, 4}, {Family::D, 3}, {Family::D, 4},
                                           {Family::F, 4}, {Family::G, 2}};
  std::mt19937_64 rng(0x5EED5u);
  for (int trial = 0; trial < 50 && c.ok; ++trial) {
    const auto& t = rnd_types[rng() % rnd_types.size()];
    RootSystem sys(t);
    const int l = 1 + static_cast<int>(rng() % 5);
    std::vector<int> idx;
    for (int j = 0; j < l; ++j) idx.push_back(1 + static_cast<int>(rng() % sys.rank()));
    ProductSpec spec(sys, idx, Variant::GENERAL);
    auto fast = admissible_degrees(spec);
    auto oracle = box_scan_admissible(spec);
    bool same = fast.degrees.size() == oracle.degrees.size();
    for (size_t k = 0; same && k < fast.degrees.size(); ++k)
      same = vec_eq(fast.degrees[k], oracle.degrees[k]) && fast.values[k] == oracle.values[k];
    std::ostringstream name;
    name << t.name() << " x{";
    for (size_t k = 0; k < idx.size(); ++k) name << (k ? "," : "") << idx[k];
    name << "}";
    c.require(same, "trial " + std::to_string(trial) + " (" + name.str() +
                        "): enumerator disagrees with box oracle");
  }
  if (c.ok)
    c.detail << "ground truths, " << collapsed << " distinct-index collapses, 50 oracle trials";
  return c.ok;
}

// ---- criterion 6: rank-one J-coefficient orders -----------------------------

bool criterion_j_orders(Check& c) {
  RootSystem a1({Family::A, 1});
  for (int d = 1; d <= 10; ++d) {
    long long v = nu(1, d);
    CorootVector dv(1);
    dv << d;
    long long k = k_exponent(a1, dv);
    c.require(v == k && k == static_cast<long long>(d) + static_cast<long long>(d) * d,
              "d=" + std::to_string(d) + ": nu=" + std::to_string(v) + " k=" + std::to_string(k));
    if (!c.ok) break;
  }
  if (c.ok) c.detail << "nu_d = k_d = d + d^2 for d = 1..10";
  return c.ok;
}

// ---- criteria 7 and 9: forward round trip and the difference identity -------

struct ForwardInstance {
  EffLattice lattice;
  Box box;
  DifferenceModuleInstance inst;
};

std::vector<ForwardInstance> build_forward_instances() {
  std::vector<ForwardInstance> out;
  for (int i = 0; i < 20; ++i) {
    const bool one_var = i < 10;
    std::vector<Eigen::VectorXi> fns;
    if (one_var) {
      Eigen::VectorXi p1(1), p2(1);
      switch (i % 3) {
        case 0: p1 << 1; fns = {p1}; break;
        case 1: p1 << 2; fns = {p1}; break;
        default: p1 << 1; p2 << 2; fns = {p1, p2}; break;
      }
    } else {
      Eigen::VectorXi p1(2), p2(2);
      switch (i % 3) {
        case 0: p1 << 1, 0; p2 << 0, 1; break;
        case 1: p1 << 1, 1; p2 << 0, 1; break;
        default: p1 << 2, 1; p2 << 1, 2; break;
      }
      fns = {p1, p2};
    }
    EffLattice lat(one_var ? 1 : 2, fns);
    Box box(one_var ? std::vector<int>{8} : std::vector<int>{4, 4});
    int dim = 1 + i % 3;
    auto inst = generate_difference_module_T(lat, dim, 1000u + static_cast<unsigned>(i), box);
    out.push_back(ForwardInstance{lat, box, std::move(inst)});
  }
  return out;
}

bool criterion_forward(Check& c, const std::vector<ForwardInstance>& instances) {
  long long predicted_total = 0;
  for (size_t n = 0; n < instances.size(); ++n) {
    const auto& fi = instances[n];
    const std::string tag = "instance " + std::to_string(n);
    GrowthCertificate cert;
    try {
      cert = construct_certificate(fi.inst.F, fi.inst.C, fi.lattice, fi.box);
    } catch (const std::exception& e) {
      c.require(false, tag + ": " + e.what());
      break;
    }
    MultiDegree bad;
    const bool growth = check_quadratic_growth(fi.inst.T, cert, fi.box, &bad);
    c.require(growth, tag + ": quadratic growth fails at " + (growth ? "" : format_degree(bad)));
    for (int f = 0; f < fi.lattice.k() && c.ok; ++f) {
      auto est = vanishing_estimate(cert, fi.lattice, f, fi.box);
      const auto& a = fi.inst.connections[static_cast<size_t>(f)].A;
      for (const auto& [d, e] : est) {
        const bool predicted_zero = e.is_infinite() || e.finite().sign() > 0;
        if (!predicted_zero) continue;
        ++predicted_total;
        c.require(a.coeff_is_zero(d),
                  tag + ": A_" + format_degree(d) + " nonzero beyond predicted support");
        if (!c.ok) break;
      }
    }
    if (!c.ok) break;
  }
  c.require(predicted_total > 0, "vanishing estimate never predicted anything");
  if (c.ok)
    c.detail << instances.size() << " instances; " << predicted_total
             << " predicted-zero coefficients all vanish";
  return c.ok;
}

bool criterion_identity(Check& c, const std::vector<ForwardInstance>& instances) {
  c.require(!instances.empty(), "no forward instances available");
  int checked = 0;
  for (size_t n = 0; n < instances.size() && c.ok; ++n) {
    const auto& fi = instances[n];
    for (int f = 0; f < fi.lattice.k() && c.ok; ++f) {
      const auto& conn = fi.inst.connections[static_cast<size_t>(f)];
      MatQ pq(conn.P.rows(), conn.P.cols());
      for (Eigen::Index a = 0; a < conn.P.rows(); ++a)
        for (Eigen::Index b = 0; b < conn.P.cols(); ++b) pq(a, b) = RationalQ(conn.P(a, b));
      NovikovSeries lhs = fi.inst.T.coeffs.q_dilate(conn.p).left_mul(pq);
      NovikovSeries rhs = fi.inst.T.coeffs * conn.A;
      c.require(lhs == rhs, "instance " + std::to_string(n) + " functional " + std::to_string(f) +
                                ": P q-dilate(T) != T A");
      ++checked;
    }
  }
  // The identity holds for arbitrary fundamental solutions, not only the
  // difference-module family; one synthetic instance witnesses that.
  {
    Eigen::VectorXi p1(1);
    p1 << 1;
    EffLattice lat(1, {p1});
    Box box({6});
    OrderProfile profile;
    profile.gram = MatR::Zero(1, 1);
    profile.gram(0, 0) = 2;
    profile.m = VecR::Zero(1);
    profile.m(0) = 1;
    profile.c = 0;
    auto fs = generate_synthetic_T(lat, 2, profile, 7u, box);
    MatR pmat(2, 2);
    pmat << Rational(1), Rational(1), Rational(0), Rational(1);
    auto conn = shift_connection(fs, pmat, p1);
    MatQ pq(2, 2);
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) pq(a, b) = RationalQ(pmat(a, b));
    c.require(fs.coeffs.q_dilate(p1).left_mul(pq) == fs.coeffs * conn.A,
              "synthetic instance: P q-dilate(T) != T A");
    ++checked;
  }
  if (c.ok) c.detail << checked << " connection identities exact";
  return c.ok;
}

// ---- criterion 8: reverse round trip ----------------------------------------

bool criterion_reverse(Check& c) {
  // s = 1 instances share the one-functional lattice p = (1).
  Eigen::VectorXi pid(1);
  pid << 1;
  EffLattice lat1(1, {pid});
  Box box1({25});
  MultiDegree one{1}, two{2};

  {  // F = {1}, C = 0: L(d) = d(d+1)/2, gram = [[1]].
    auto table = propagate_lower_bounds({one}, Rational(0), lat1, box1);
    for (int d = 0; d <= 25; ++d) {
      Rational want = Rational(d) * Rational(d + 1) / 2;
      c.require(!table.at({d}).is_infinite() && table.at({d}).finite() == want,
                "F={1},C=0: L(" + std::to_string(d) + ") wrong");
      if (!c.ok) break;
    }
    auto cert = construct_certificate({one}, Rational(0), lat1, box1);
    c.require(cert.N == 1 && cert.gram_rational(0, 0) == 1 && cert.gram_root(0, 0) == 0 &&
                  cert.m(0) == 0 && cert.c == 0,
              "F={1},C=0: certificate data unexpected");
    for (int d = 0; d <= 25 && c.ok; ++d)
      c.require(QuadExt(table.at({d}).finite()) >= cert.bound({d}),
                "F={1},C=0: bound exceeds DP at d=" + std::to_string(d));
  }
  {  // F = {1,2}, C = 0: gram = [[1/2]] (N = 4 collapses), bound d^2/4 <= L(d).
    Box box20({20});
    auto table = propagate_lower_bounds({one, two}, Rational(0), lat1, box20);
    auto cert = construct_certificate({one, two}, Rational(0), lat1, box20);
    c.require(cert.N == 1 && cert.gram_rational(0, 0) == Rational(1, 2) &&
                  cert.gram_root(0, 0) == 0,
              "F={1,2},C=0: expected rational gram [[1/2]]");
    for (int d = 0; d <= 20 && c.ok; ++d) {
      c.require(QuadExt(table.at({d}).finite()) >= cert.bound({d}),
                "F={1,2},C=0: bound exceeds DP at d=" + std::to_string(d));
      c.require(cert.bound({d}) == QuadExt(Rational(d) * Rational(d) / 4),
                "F={1,2},C=0: bound is not d^2/4 at d=" + std::to_string(d));
    }
  }
  {  // F = {1}, C = -1: L(d) = d(d-1)/2, m = (-1).
    auto table = propagate_lower_bounds({one}, Rational(-1), lat1, box1);
    for (int d = 0; d <= 25 && c.ok; ++d) {
      Rational want = Rational(d) * Rational(d - 1) / 2;
      c.require(table.at({d}).finite() == want,
                "F={1},C=-1: L(" + std::to_string(d) + ") wrong");
    }
    auto cert = construct_certificate({one}, Rational(-1), lat1, box1);
    c.require(cert.m(0) == -1, "F={1},C=-1: expected m = (-1)");
    for (int d = 0; d <= 25 && c.ok; ++d)
      c.require(QuadExt(table.at({d}).finite()) >= cert.bound({d}),
                "F={1},C=-1: bound exceeds DP at d=" + std::to_string(d));
  }
  {  // s = 2: F = {e1, e2}, coordinate functionals, N = 2 genuinely irrational.
    Eigen::VectorXi p1(2), p2(2);
    p1 << 1, 0;
    p2 << 0, 1;
    EffLattice lat2(2, {p1, p2});
    Box box2({8, 8});
    std::vector<MultiDegree> f2 = {{1, 0}, {0, 1}};
    auto table = propagate_lower_bounds(f2, Rational(0), lat2, box2);
    auto cert = construct_certificate(f2, Rational(0), lat2, box2);
    bool rational_part_zero = true;
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) rational_part_zero = rational_part_zero && cert.gram_rational(a, b) == 0;
    c.require(cert.N == 2 && cert.gram_root(0, 0) == Rational(1, 2) &&
                  cert.gram_root(1, 1) == Rational(1, 2) && cert.gram_root(0, 1) == 0 &&
                  rational_part_zero,
              "s=2: expected gram = I/sqrt(2)");
    for (const auto& d : box2.graded_degrees()) {
      c.require(QuadExt(table.at(d).finite()) >= cert.bound(d),
                "s=2: bound exceeds DP at " + format_degree(d));
      if (!c.ok) break;
    }
  }
  if (c.ok) c.detail << "closed forms, certificate data, and DP dominance verified";
  return c.ok;
}

}  // namespace

bool run_acceptance(std::ostream& os) {
  struct Criterion {
    int id;
    const char* title;
    double budget_s;
    std::function<bool(Check&)> body;
  };

  std::vector<ForwardInstance> forward;
  auto forward_ready = [&](Check& c) -> bool {
    if (forward.empty()) {
      try {
        forward = build_forward_instances();
      } catch (const std::exception& e) {
        c.require(false, std::string("instance generation failed: ") + e.what());
        return false;
      }
    }
    return true;
  };

  const std::vector<Criterion> criteria = {
      {1, "symmetrized Cartan determinants", 1.0, criterion_table},
      {2, "bordered forms positive definite off E8", 10.0, criterion_sweep},
      {3, "E8 fork falsification", 60.0, criterion_e8},
      {4, "brute force agrees with support-subset certificates", 60.0, criterion_agreement},
      {5, "degree enumeration against the box oracle", 60.0, criterion_degrees},
      {6, "J-coefficient orders on the projective line", 5.0, criterion_j_orders},
      {7, "forward round trip: growth implies finite connection support", 120.0,
       [&](Check& c) { return forward_ready(c) && criterion_forward(c, forward); }},
      {8, "reverse round trip: DP bounds dominate constructed certificates", 60.0,
       criterion_reverse},
      {9, "difference-equation identity P q-dilate(T) = T A", 120.0,
       [&](Check& c) { return forward_ready(c) && criterion_identity(c, forward); }},
  };

  bool all_ok = true;
  os << std::fixed << std::setprecision(2);
  for (const auto& cr : criteria) {
    Check check;
    const auto start = std::chrono::steady_clock::now();
    bool ok = false;
    try {
      ok = cr.body(check);
    } catch (const std::exception& e) {
      check.require(false, std::string("exception: ") + e.what());
      ok = false;
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (ok && elapsed > cr.budget_s) {
      ok = false;
      check.detail.str("budget exceeded");
    }
    all_ok = all_ok && ok;
    os << (ok ? "PASS" : "FAIL") << " criterion " << cr.id << " [" << cr.title << "] ("
       << elapsed << "s, budget " << cr.budget_s << "s)";
    const std::string detail = check.detail.str();
    if (!detail.empty()) os << ": " << detail;
    os << "\n";
  }
  os << (all_ok ? "ACCEPTANCE: all criteria passed" : "ACCEPTANCE: FAILURES PRESENT") << "\n";
  return all_ok;
}

}  // namespace qk
