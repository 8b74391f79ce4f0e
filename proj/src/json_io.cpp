#include "qk/json_io.hpp"

#include <algorithm>
#include <sstream>

namespace qk {

static const Json& need(const Json& j, const char* key, const std::string& path) {
  if (!j.is_object()) throw SchemaError(path + ": expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw SchemaError(path + "." + key + ": missing");
  return *it;
}

static int need_int(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) throw SchemaError(path + ": expected an integer");
  return j.get<int>();
}

static const Json& need_array(const Json& j, const std::string& path) {
  if (!j.is_array()) throw SchemaError(path + ": expected an array");
  return j;
}

Json type_to_json(const RootSystemType& t) {
  return Json{{"family", std::string(1, static_cast<char>(t.family))}, {"rank", t.rank}};
}

RootSystemType type_from_json(const Json& j, const std::string& path) {
  const Json& fam = need(j, "family", path);
  if (!fam.is_string() || fam.get<std::string>().size() != 1)
    throw SchemaError(path + ".family: expected a one-letter string");
  RootSystemType t{};
  try {
    t.family = family_from_char(fam.get<std::string>()[0]);
  } catch (const std::exception& e) {
    throw SchemaError(path + ".family: " + e.what());
  }
  t.rank = need_int(need(j, "rank", path), path + ".rank");
  return t;
}

Json int_matrix_to_json(const Eigen::MatrixXi& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json int_vector_to_json(const Eigen::VectorXi& v) {
  Json arr = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v(i));
  return arr;
}

Json rational_to_json(const Rational& x) { return to_fraction_string(x); }

Rational rational_from_json(const Json& j, const std::string& path) {
  if (j.is_number_integer()) return Rational(j.get<long long>());
  if (!j.is_string()) throw SchemaError(path + ": expected \"p/q\" string or integer");
  try {
    return rational_from_string(j.get<std::string>());
  } catch (const std::exception& e) {
    throw SchemaError(path + ": " + e.what());
  }
}

Json rational_matrix_to_json(const MatR& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(rational_to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

MatR rational_matrix_from_json(const Json& j, const std::string& path) {
  need_array(j, path);
  const auto n = j.size();
  if (n == 0) return MatR(0, 0);
  need_array(j[0], path + "[0]");
  const auto cols = j[0].size();
  MatR m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(cols));
  for (size_t i = 0; i < n; ++i) {
    const std::string rp = path + "[" + std::to_string(i) + "]";
    need_array(j[i], rp);
    if (j[i].size() != cols) throw SchemaError(rp + ": ragged matrix");
    for (size_t c = 0; c < cols; ++c)
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(c)) =
          rational_from_json(j[i][c], rp + "[" + std::to_string(c) + "]");
  }
  return m;
}

Json rational_vector_to_json(const VecR& v) {
  Json arr = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(rational_to_json(v(i)));
  return arr;
}

VecR rational_vector_from_json(const Json& j, const std::string& path) {
  need_array(j, path);
  VecR v(static_cast<Eigen::Index>(j.size()));
  for (size_t i = 0; i < j.size(); ++i)
    v(static_cast<Eigen::Index>(i)) = rational_from_json(j[i], path + "[" + std::to_string(i) + "]");
  return v;
}

static Json poly_to_json(const Poly& p) {
  Json arr = Json::array();
  for (const auto& c : p.coeffs()) arr.push_back(rational_to_json(c));
  if (arr.empty()) arr.push_back("0");
  return arr;
}

static Poly poly_from_json(const Json& j, const std::string& path) {
  need_array(j, path);
  std::vector<Rational> coeffs;
  for (size_t i = 0; i < j.size(); ++i)
    coeffs.push_back(rational_from_json(j[i], path + "[" + std::to_string(i) + "]"));
  return Poly(coeffs);
}

Json rational_q_to_json(const RationalQ& f) {
  return Json{{"num", poly_to_json(f.num())}, {"den", poly_to_json(f.den())}};
}

RationalQ rational_q_from_json(const Json& j, const std::string& path) {
  Poly num = poly_from_json(need(j, "num", path), path + ".num");
  Poly den = poly_from_json(need(j, "den", path), path + ".den");
  if (den.is_zero()) throw SchemaError(path + ".den: zero denominator");
  return RationalQ(num, den);
}

std::string degree_key(const MultiDegree& d) {
  std::ostringstream os;
  for (size_t i = 0; i < d.size(); ++i) os << (i ? "," : "") << d[i];
  return os.str();
}

MultiDegree degree_from_key(const std::string& key, const std::string& path) {
  MultiDegree d;
  std::istringstream is(key);
  std::string part;
  while (std::getline(is, part, ',')) {
    try {
      size_t pos = 0;
      int v = std::stoi(part, &pos);
      if (pos != part.size()) throw std::invalid_argument("trailing characters");
      d.push_back(v);
    } catch (const std::exception&) {
      throw SchemaError(path + ": bad degree key \"" + key + "\"");
    }
  }
  if (d.empty()) throw SchemaError(path + ": empty degree key");
  return d;
}

static Json matq_to_json(const MatQ& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(rational_q_to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json novikov_to_json(const NovikovSeries& t) {
  Json coeffs = Json::object();
  for (const auto& d : t.support()) coeffs[degree_key(d)] = matq_to_json(t.coeff(d));
  Json trunc = Json::array();
  for (int c : t.trunc().cap) trunc.push_back(c);
  return Json{{"trunc", std::move(trunc)}, {"dim", t.dim()}, {"coeffs", std::move(coeffs)}};
}

NovikovSeries novikov_from_json(const Json& j, const std::string& path) {
  const Json& tr = need_array(need(j, "trunc", path), path + ".trunc");
  std::vector<int> caps;
  for (size_t i = 0; i < tr.size(); ++i)
    caps.push_back(need_int(tr[i], path + ".trunc[" + std::to_string(i) + "]"));
  int dim = need_int(need(j, "dim", path), path + ".dim");
  if (dim < 1) throw SchemaError(path + ".dim: must be >= 1");
  Box box(caps);
  NovikovSeries t(box, dim);
  const Json& coeffs = need(j, "coeffs", path);
  if (!coeffs.is_object()) throw SchemaError(path + ".coeffs: expected an object");
  for (auto it = coeffs.begin(); it != coeffs.end(); ++it) {
    const std::string cp = path + ".coeffs[\"" + it.key() + "\"]";
    MultiDegree d = degree_from_key(it.key(), cp);
    if (!box.contains(d)) throw SchemaError(cp + ": degree outside truncation");
    const Json& rows = need_array(it.value(), cp);
    if (rows.size() != static_cast<size_t>(dim)) throw SchemaError(cp + ": wrong row count");
    MatQ m = matq_zero(dim);
    for (int r = 0; r < dim; ++r) {
      const Json& row = need_array(rows[static_cast<size_t>(r)], cp);
      if (row.size() != static_cast<size_t>(dim)) throw SchemaError(cp + ": ragged matrix");
      for (int c = 0; c < dim; ++c)
        m(r, c) = rational_q_from_json(row[static_cast<size_t>(c)],
                                       cp + "[" + std::to_string(r) + "][" + std::to_string(c) + "]");
    }
    t.set_coeff(d, m);
  }
  return t;
}

Json lattice_to_json(const EffLattice& lat) {
  Json p = Json::array();
  for (const auto& f : lat.functionals()) p.push_back(int_vector_to_json(f));
  return Json{{"s", lat.s()}, {"p", std::move(p)}};
}

EffLattice lattice_from_json(const Json& j, const std::string& path) {
  int s = need_int(need(j, "s", path), path + ".s");
  const Json& parr = need_array(need(j, "p", path), path + ".p");
  std::vector<Eigen::VectorXi> fns;
  for (size_t i = 0; i < parr.size(); ++i) {
    const std::string fp = path + ".p[" + std::to_string(i) + "]";
    const Json& row = need_array(parr[i], fp);
    Eigen::VectorXi f(static_cast<Eigen::Index>(row.size()));
    for (size_t c = 0; c < row.size(); ++c)
      f(static_cast<Eigen::Index>(c)) = need_int(row[c], fp + "[" + std::to_string(c) + "]");
    fns.push_back(std::move(f));
  }
  try {
    return EffLattice(s, std::move(fns));
  } catch (const std::exception& e) {
    throw SchemaError(path + ": " + e.what());
  }
}

Json profile_to_json(const OrderProfile& pr) {
  return Json{{"gram", rational_matrix_to_json(pr.gram)},
              {"m", rational_vector_to_json(pr.m)},
              {"c", rational_to_json(pr.c)}};
}

OrderProfile profile_from_json(const Json& j, const std::string& path) {
  OrderProfile pr;
  pr.gram = rational_matrix_from_json(need(j, "gram", path), path + ".gram");
  pr.m = rational_vector_from_json(need(j, "m", path), path + ".m");
  pr.c = rational_from_json(need(j, "c", path), path + ".c");
  if (pr.gram.rows() != pr.gram.cols()) throw SchemaError(path + ".gram: not square");
  if (pr.m.size() != pr.gram.rows()) throw SchemaError(path + ".m: size differs from gram");
  return pr;
}

Json certificate_to_json(const GrowthCertificate& cert) {
  return Json{{"gram_num", rational_matrix_to_json(cert.gram_rational)},
              {"gram_sqrtN_part", rational_matrix_to_json(cert.gram_root)},
              {"N", cert.N.str()},
              {"m", rational_vector_to_json(cert.m)},
              {"c", rational_to_json(cert.c)}};
}

GrowthCertificate certificate_from_json(const Json& j, const std::string& path) {
  GrowthCertificate cert;
  cert.gram_rational = rational_matrix_from_json(need(j, "gram_num", path), path + ".gram_num");
  cert.gram_root =
      rational_matrix_from_json(need(j, "gram_sqrtN_part", path), path + ".gram_sqrtN_part");
  const Json& n = need(j, "N", path);
  if (n.is_number_integer()) {
    cert.N = BigInt(n.get<long long>());
  } else if (n.is_string()) {
    try {
      cert.N = BigInt(n.get<std::string>());
    } catch (const std::exception&) {
      throw SchemaError(path + ".N: not an integer");
    }
  } else {
    throw SchemaError(path + ".N: expected integer or string");
  }
  if (cert.N < 1) throw SchemaError(path + ".N: radicand must be >= 1");
  cert.m = rational_vector_from_json(need(j, "m", path), path + ".m");
  cert.c = rational_from_json(need(j, "c", path), path + ".c");
  if (cert.gram_rational.rows() != cert.gram_rational.cols() ||
      cert.gram_root.rows() != cert.gram_rational.rows() ||
      cert.gram_root.cols() != cert.gram_rational.cols())
    throw SchemaError(path + ": gram parts must be square and same-shaped");
  if (cert.m.size() != cert.gram_rational.rows())
    throw SchemaError(path + ".m: size differs from gram");
  return cert;
}

Json order_table_to_json(const OrderTable& table) {
  Json out = Json::object();
  for (const auto& [d, v] : table.values) {
    if (v.is_infinite())
      out[degree_key(d)] = "inf";
    else
      out[degree_key(d)] = rational_to_json(v.finite());
  }
  return out;
}

LiftMap lift_from_json(const Json& j, const std::string& path) {
  need_array(j, path);
  std::map<std::vector<int>, std::vector<int>> table;
  for (size_t i = 0; i < j.size(); ++i) {
    const std::string pp = path + "[" + std::to_string(i) + "]";
    const Json& pair = need_array(j[i], pp);
    if (pair.size() != 2) throw SchemaError(pp + ": expected [d, lifted_d]");
    auto read_vec = [&](const Json& v, const std::string& vp) {
      need_array(v, vp);
      std::vector<int> out;
      for (size_t c = 0; c < v.size(); ++c)
        out.push_back(need_int(v[c], vp + "[" + std::to_string(c) + "]"));
      return out;
    };
    std::vector<int> dom = read_vec(pair[0], pp + "[0]");
    std::vector<int> img = read_vec(pair[1], pp + "[1]");
    if (table.count(dom)) throw SchemaError(pp + ": duplicate lift domain entry");
    table[dom] = img;
  }
  try {
    return LiftMap(std::move(table));
  } catch (const std::exception& e) {
    throw SchemaError(path + ": " + e.what());
  }
}

ProductSpec product_spec_from_json(const Json& j, const std::string& path) {
  RootSystemType t = type_from_json(j, path);
  const Json& idx = need_array(need(j, "indices", path), path + ".indices");
  std::vector<int> indices;
  for (size_t i = 0; i < idx.size(); ++i)
    indices.push_back(need_int(idx[i], path + ".indices[" + std::to_string(i) + "]"));
  Variant variant = Variant::GENERAL;
  if (j.contains("variant")) {
    const Json& v = j.at("variant");
    if (!v.is_string()) throw SchemaError(path + ".variant: expected a string");
    std::string name = v.get<std::string>();
    if (name == "general")
      variant = Variant::GENERAL;
    else if (name == "simply_laced_distinct")
      variant = Variant::SIMPLY_LACED_DISTINCT;
    else
      throw SchemaError(path + ".variant: unknown variant \"" + name + "\"");
  }
  try {
    return ProductSpec(RootSystem(t), std::move(indices), variant);
  } catch (const std::exception& e) {
    throw SchemaError(path + ": " + e.what());
  }
}

Json degree_set_to_json(const DegreeSet& set) {
  Json degrees = Json::array();
  long long max_total = 0;
  for (const auto& d : set.degrees) {
    degrees.push_back(int_vector_to_json(d));
    long long t = 0;
    for (Eigen::Index i = 0; i < d.size(); ++i) t += d(i);
    max_total = std::max(max_total, t);
  }
  Json values = Json::array();
  for (const auto& v : set.values) values.push_back(rational_to_json(v));
  return Json{{"degrees", std::move(degrees)},
              {"objective_values", std::move(values)},
              {"max_total_degree", max_total}};
}

}  // namespace qk
