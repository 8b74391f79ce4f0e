#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "qk/acceptance.hpp"
#include "qk/bordered_form.hpp"
#include "qk/degree_enumeration.hpp"
#include "qk/json_io.hpp"
#include "qk/nilpotent_series.hpp"
#include "qk/order_propagation.hpp"
#include "qk/root_system.hpp"

namespace {

using qk::Json;

// Static provenance only: reports must be byte-identical across invocations,
// so the header carries no timestamps or host data.
Json report_header() { return Json{{"tool", "qk"}, {"format", 1}}; }

void emit(Json report, const std::string& command, const std::string& out_path) {
  report["header"] = report_header();
  report["command"] = command;
  const std::string text = report.dump(2) + "\n";
  std::cout << text;
  if (!out_path.empty()) {
    std::ofstream f(out_path);
    if (!f) throw std::runtime_error("cannot write --output file: " + out_path);
    f << text;
  }
}

std::vector<int> parse_int_list(const std::string& csv, const std::string& flag) {
  std::vector<int> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    size_t pos = 0;
    int v = std::stoi(item, &pos);
    if (pos != item.size()) throw qk::SchemaError(flag + ": bad integer '" + item + "'");
    out.push_back(v);
  }
  if (out.empty()) throw qk::SchemaError(flag + ": empty list");
  return out;
}

// --family accepts a bare letter (rank supplied via --rank) or letter+rank
// like "E8"; a conflicting --rank is rejected.
qk::RootSystemType parse_type(const std::string& family, int rank_flag) {
  if (family.empty()) throw qk::SchemaError("--family is required");
  qk::Family fam = qk::family_from_char(family[0]);
  int rank = rank_flag;
  if (family.size() > 1) {
    size_t pos = 0;
    int embedded = std::stoi(family.substr(1), &pos);
    if (pos + 1 != family.size())
      throw qk::SchemaError("--family: trailing characters in '" + family + "'");
    if (rank_flag > 0 && rank_flag != embedded)
      throw qk::SchemaError("--family '" + family + "' conflicts with --rank");
    rank = embedded;
  }
  if (rank <= 0) throw qk::SchemaError("--rank is required when --family is a bare letter");
  return {fam, rank};
}

qk::Variant parse_variant(const std::string& v) {
  if (v == "general") return qk::Variant::GENERAL;
  if (v == "simply_laced_distinct") return qk::Variant::SIMPLY_LACED_DISTINCT;
  throw qk::SchemaError("--variant: expected 'general' or 'simply_laced_distinct'");
}

Json read_input(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw qk::SchemaError("cannot read --input file: " + path);
  return Json::parse(f);
}

std::vector<qk::RootSystemType> table_types() {
  std::vector<qk::RootSystemType> types;
  for (int n = 1; n <= 8; ++n) types.push_back({qk::Family::A, n});
  for (int n = 2; n <= 8; ++n) types.push_back({qk::Family::B, n});
  for (int n = 2; n <= 8; ++n) types.push_back({qk::Family::C, n});
  for (int n = 3; n <= 8; ++n) types.push_back({qk::Family::D, n});
  types.push_back({qk::Family::E, 6});
  types.push_back({qk::Family::E, 7});
  types.push_back({qk::Family::E, 8});
  types.push_back({qk::Family::F, 4});
  types.push_back({qk::Family::G, 2});
  return types;
}

// ---- command bodies ---------------------------------------------------------

int cmd_table1(const std::string& out) {
  Json entries = Json::array();
  for (const auto& t : table_types()) {
    qk::RootSystem sys(t);
    entries.push_back(Json{{"type", t.name()}, {"det_2AR", qk::det_2AR(sys).str()}});
  }
  emit(Json{{"entries", entries}}, "table1", out);
  return 0;
}

int cmd_verify_ineq(const qk::RootSystemType& type, int index, int radius,
                    const std::string& out) {
  qk::RootSystem sys(type);
  if (index < 1 || index > sys.rank()) throw qk::SchemaError("--index out of range");
  auto bordered = qk::make_bordered(sys, index);
  auto pd = qk::is_positive_definite(qk::to_rational(bordered.matrix_2AQ));
  bool verdict = qk::verify_lemma_appA(sys, index);

  Json minors = Json::array();
  for (const auto& m : pd.minors) minors.push_back(qk::rational_to_json(m));
  Json rep{{"type", type.name()},
           {"i", index},
           {"det_2AR", qk::det_2AR(sys).str()},
           {"det_2AQ", qk::det_2AQ(sys, index).str()},
           {"minors", minors},
           {"verdict", verdict},
           {"radius", radius}};

  if (!verdict) {
    auto bf = qk::brute_force_inequality(sys, index, radius);
    if (bf.violating_d) {
      rep["violating_d"] = qk::int_vector_to_json(*bf.violating_d);
    } else if (auto fv = qk::form_violation_search(sys, index, radius)) {
      // No integer point in the box breaks the z = 1 inequality, but the
      // quadratic form itself is indefinite along this witness direction.
      rep["form_violation"] = Json{{"d", qk::int_vector_to_json(fv->d)},
                                   {"z_star", qk::rational_to_json(fv->z_star)},
                                   {"value", qk::rational_to_json(fv->value)}};
    }
    rep["expected_falsification"] = sys.has_E8_factor();
  }
  emit(rep, "verify-ineq", out);
  if (verdict) return 0;
  return sys.has_E8_factor() ? 3 : 1;
}

int cmd_e8_scan(int radius, const std::string& out) {
  qk::RootSystem e8({qk::Family::E, 8});
  const int fork = 4;
  auto dets = qk::vertex_scan(e8);
  Json det_json = Json::array();
  for (const auto& d : dets) det_json.push_back(d.str());

  Json rep{{"vertex_dets", det_json}, {"fork_index", fork}, {"radius", radius}};
  auto bf = qk::brute_force_inequality(e8, fork, radius);
  if (bf.violating_d) rep["violating_d"] = qk::int_vector_to_json(*bf.violating_d);
  auto fv = qk::form_violation_search(e8, fork, radius);
  if (fv)
    rep["form_violation"] = Json{{"d", qk::int_vector_to_json(fv->d)},
                                 {"z_star", qk::rational_to_json(fv->z_star)},
                                 {"value", qk::rational_to_json(fv->value)}};
  bool confirmed = dets[fork - 1] < 0 && (bf.violating_d.has_value() || fv.has_value());
  rep["falsification_confirmed"] = confirmed;
  emit(rep, "e8-scan", out);
  return confirmed ? 3 : 1;
}

struct SpecArgs {
  std::string family;
  int rank = 0;
  std::string indices;
  std::string variant = "general";
  std::string input;
};

std::pair<qk::ProductSpec, qk::LiftMap> build_spec(const SpecArgs& a) {
  if (!a.input.empty()) {
    Json j = read_input(a.input);
    qk::ProductSpec spec = qk::product_spec_from_json(j);
    qk::LiftMap lift;
    if (j.contains("lift")) lift = qk::lift_from_json(j.at("lift"), "$.lift");
    return {spec, lift};
  }
  qk::RootSystem sys(parse_type(a.family, a.rank));
  if (a.indices.empty()) throw qk::SchemaError("--indices is required without --input");
  auto idx = parse_int_list(a.indices, "--indices");
  return {qk::ProductSpec(sys, idx, parse_variant(a.variant)), qk::LiftMap{}};
}

int cmd_enumerate_degrees(const SpecArgs& a, const std::string& out) {
  auto [spec, lift] = build_spec(a);
  auto set = qk::admissible_degrees(spec, lift);
  emit(qk::degree_set_to_json(set), "enumerate-degrees", out);
  return 0;
}

int cmd_degree_bound(const SpecArgs& a, const std::string& out) {
  auto [spec, lift] = build_spec(a);
  auto report = qk::degree_bound_report(spec, lift);
  Json rep{{"max_total_degree", report.max_total_degree},
           {"count", static_cast<long long>(report.set.degrees.size())},
           {"oracle_box_radius", qk::oracle_box_radius(spec)}};
  emit(rep, "degree-bound", out);
  return 0;
}

int cmd_verify_j_a1(int dmax, const std::string& out) {
  if (dmax < 1) throw qk::SchemaError("--dmax must be >= 1");
  auto report = qk::verify_lemma_bound_A1(dmax);
  Json orders = Json::array();
  for (int d = 1; d <= dmax; ++d) {
    long long v = qk::nu(1, d);
    orders.push_back(Json{{"d", d},
                          {"order", v},
                          {"expected", static_cast<long long>(d) + static_cast<long long>(d) * d}});
  }
  Json rep{{"holds", report.holds},
           {"equality_everywhere", report.equality_everywhere},
           {"d_max", report.d_max},
           {"orders", orders}};
  emit(rep, "verify-j-a1", out);
  return report.holds ? 0 : 1;
}

struct PropagateInput {
  qk::EffLattice lattice;
  std::vector<qk::MultiDegree> F;
  qk::Rational C;
  qk::Box box;
};

PropagateInput read_propagate_input(const std::string& path, const std::string& trunc_csv) {
  Json j = read_input(path);
  if (!j.is_object()) throw qk::SchemaError("$: expected an object");
  if (!j.contains("lattice")) throw qk::SchemaError("$.lattice: missing");
  qk::EffLattice lattice = qk::lattice_from_json(j.at("lattice"), "$.lattice");
  if (!j.contains("F") || !j.at("F").is_array()) throw qk::SchemaError("$.F: expected an array");
  std::vector<qk::MultiDegree> F;
  for (size_t k = 0; k < j.at("F").size(); ++k) {
    const Json& e = j.at("F")[k];
    const std::string p = "$.F[" + std::to_string(k) + "]";
    if (!e.is_array()) throw qk::SchemaError(p + ": expected an array");
    qk::MultiDegree d;
    for (const auto& x : e) {
      if (!x.is_number_integer()) throw qk::SchemaError(p + ": expected integers");
      d.push_back(x.get<int>());
    }
    F.push_back(d);
  }
  qk::Rational C = j.contains("C") ? qk::rational_from_json(j.at("C"), "$.C") : qk::Rational(0);
  std::vector<int> caps;
  if (!trunc_csv.empty()) {
    caps = parse_int_list(trunc_csv, "--trunc");
  } else if (j.contains("box") && j.at("box").is_array()) {
    for (const auto& x : j.at("box")) {
      if (!x.is_number_integer()) throw qk::SchemaError("$.box: expected integers");
      caps.push_back(x.get<int>());
    }
  } else {
    throw qk::SchemaError("$.box: missing (or pass --trunc)");
  }
  if (static_cast<int>(caps.size()) != lattice.s())
    throw qk::SchemaError("$.box: expected " + std::to_string(lattice.s()) + " entries");
  return {lattice, F, C, qk::Box(caps)};
}

int cmd_propagate(const std::string& input, const std::string& trunc, const std::string& out) {
  auto in = read_propagate_input(input, trunc);
  auto table = qk::propagate_lower_bounds(in.F, in.C, in.lattice, in.box);
  emit(Json{{"orders", qk::order_table_to_json(table)}}, "propagate", out);
  return 0;
}

int cmd_certify(const std::string& input, const std::string& trunc, const std::string& out) {
  auto in = read_propagate_input(input, trunc);
  qk::GrowthCertificate cert;
  try {
    cert = qk::construct_certificate(in.F, in.C, in.lattice, in.box);
  } catch (const std::exception& e) {
    emit(Json{{"verified", false}, {"reason", e.what()}}, "certify", out);
    return 1;
  }
  emit(Json{{"verified", true}, {"certificate", qk::certificate_to_json(cert)}}, "certify", out);
  return 0;
}

int cmd_shift_connection(const std::string& input, const std::string& out) {
  Json j = read_input(input);
  if (!j.is_object()) throw qk::SchemaError("$: expected an object");
  for (const char* key : {"lattice", "T", "P", "p"})
    if (!j.contains(key)) throw qk::SchemaError(std::string("$.") + key + ": missing");
  qk::EffLattice lattice = qk::lattice_from_json(j.at("lattice"), "$.lattice");
  qk::FundamentalSolution fs{lattice, qk::novikov_from_json(j.at("T"), "$.T")};
  qk::MatR P = qk::rational_matrix_from_json(j.at("P"), "$.P");
  if (!j.at("p").is_array()) throw qk::SchemaError("$.p: expected an array");
  Eigen::VectorXi p(j.at("p").size());
  for (size_t k = 0; k < j.at("p").size(); ++k) {
    if (!j.at("p")[k].is_number_integer()) throw qk::SchemaError("$.p: expected integers");
    p(static_cast<Eigen::Index>(k)) = j.at("p")[k].get<int>();
  }
  try {
    qk::validate_fundamental_solution(fs);
    auto conn = qk::shift_connection(fs, P, p);
    emit(Json{{"A", qk::novikov_to_json(conn.A)}, {"regular_at_zero", true}}, "shift-connection",
         out);
    return 0;
  } catch (const std::exception& e) {
    emit(Json{{"verified", false}, {"reason", e.what()}}, "shift-connection", out);
    return 1;
  }
}

int cmd_selftest(const std::string& out) {
  // Timing lines go to stderr; the stdout report stays byte-identical.
  bool ok = qk::run_acceptance(std::cerr);
  emit(Json{{"all_passed", ok}}, "selftest", out);
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact-arithmetic verifiers for quantum product supports and q-shift connections"};
  app.require_subcommand(1);

  std::string family, indices, variant = "general", input, output, trunc;
  int rank = 0, index = 0, radius = 6, dmax = 10;
  std::uint64_t seed = 0;
  app.add_option("--seed", seed, "random seed (commands here are deterministic; reserved)");

  auto add_common = [&](CLI::App* sub) { sub->add_option("--output", output, "also write the report to this file"); };

  auto* s_table = app.add_subcommand("table1", "determinants of the symmetrized Cartan matrices");
  add_common(s_table);

  auto* s_ineq = app.add_subcommand("verify-ineq", "positivity certificate for one bordered form");
  s_ineq->add_option("--family", family)->required();
  s_ineq->add_option("--rank", rank);
  s_ineq->add_option("--index", index)->required();
  s_ineq->add_option("--radius", radius);
  add_common(s_ineq);

  auto* s_e8 = app.add_subcommand("e8-scan", "all eight E8 vertex determinants and the fork witness");
  s_e8->add_option("--radius", radius);
  add_common(s_e8);

  SpecArgs spec_args;
  auto add_spec = [&](CLI::App* sub) {
    sub->add_option("--family", spec_args.family);
    sub->add_option("--rank", spec_args.rank);
    sub->add_option("--indices", spec_args.indices, "comma-separated 1-based simple indices");
    sub->add_option("--variant", spec_args.variant, "general | simply_laced_distinct");
    sub->add_option("--input", spec_args.input, "JSON product spec (overrides flags)");
    add_common(sub);
  };
  auto* s_enum = app.add_subcommand("enumerate-degrees", "admissible quantum-product degrees");
  add_spec(s_enum);
  auto* s_bound = app.add_subcommand("degree-bound", "max total admissible degree and oracle radius");
  add_spec(s_bound);

  auto* s_j = app.add_subcommand("verify-j-a1", "orders of the rank-one J-coefficients");
  s_j->add_option("--dmax", dmax);
  add_common(s_j);

  auto* s_prop = app.add_subcommand("propagate", "lower bounds through the shift-connection recursion");
  s_prop->add_option("--input", input)->required();
  s_prop->add_option("--trunc", trunc, "box caps, comma-separated (overrides input)");
  add_common(s_prop);

  auto* s_cert = app.add_subcommand("certify", "construct and verify a quadratic-growth certificate");
  s_cert->add_option("--input", input)->required();
  s_cert->add_option("--trunc", trunc);
  add_common(s_cert);

  auto* s_shift = app.add_subcommand("shift-connection", "connection coefficients of a fundamental solution");
  s_shift->add_option("--input", input)->required();
  add_common(s_shift);

  auto* s_self = app.add_subcommand("selftest", "run the full verification suite");
  add_common(s_self);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (s_table->parsed()) return cmd_table1(output);
    if (s_ineq->parsed()) return cmd_verify_ineq(parse_type(family, rank), index, radius, output);
    if (s_e8->parsed()) return cmd_e8_scan(radius, output);
    if (s_enum->parsed()) return cmd_enumerate_degrees(spec_args, output);
    if (s_bound->parsed()) return cmd_degree_bound(spec_args, output);
    if (s_j->parsed()) return cmd_verify_j_a1(dmax, output);
    if (s_prop->parsed()) return cmd_propagate(input, trunc, output);
    if (s_cert->parsed()) return cmd_certify(input, trunc, output);
    if (s_shift->parsed()) return cmd_shift_connection(input, output);
    if (s_self->parsed()) return cmd_selftest(output);
  } catch (const qk::SchemaError& e) {
    std::cerr << "schema error: " << e.what() << "\n";
    return 2;
  } catch (const qk::Json::exception& e) {
    std::cerr << "schema error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
