#pragma once

#include <json.hpp>
#include <stdexcept>
#include <string>

#include "qk/degree_enumeration.hpp"
#include "qk/novikov.hpp"
#include "qk/order_propagation.hpp"
#include "qk/root_system.hpp"

namespace qk {

using Json = nlohmann::json;

// Malformed input documents surface as a path-to-field diagnostic; the CLI
// maps this (and only this) to the usage/schema exit code.
class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Json type_to_json(const RootSystemType& t);
RootSystemType type_from_json(const Json& j, const std::string& path = "$");

Json int_matrix_to_json(const Eigen::MatrixXi& m);  // row-major nested arrays
Json int_vector_to_json(const Eigen::VectorXi& v);

Json rational_to_json(const Rational& x);  // "p" or "p/q" string
Rational rational_from_json(const Json& j, const std::string& path = "$");
Json rational_matrix_to_json(const MatR& m);
MatR rational_matrix_from_json(const Json& j, const std::string& path = "$");
Json rational_vector_to_json(const VecR& v);
VecR rational_vector_from_json(const Json& j, const std::string& path = "$");

Json rational_q_to_json(const RationalQ& f);  // {"num":[...],"den":[...]}
RationalQ rational_q_from_json(const Json& j, const std::string& path = "$");

Json novikov_to_json(const NovikovSeries& t);  // {"trunc","dim","coeffs":{"d1,d2,...":M}}
NovikovSeries novikov_from_json(const Json& j, const std::string& path = "$");

Json lattice_to_json(const EffLattice& lat);  // {"s","p":[[...]]}
EffLattice lattice_from_json(const Json& j, const std::string& path = "$");

Json profile_to_json(const OrderProfile& pr);  // {"gram","m","c"}
OrderProfile profile_from_json(const Json& j, const std::string& path = "$");

// {"gram_num","gram_sqrtN_part","N","m","c"}
Json certificate_to_json(const GrowthCertificate& cert);
GrowthCertificate certificate_from_json(const Json& j, const std::string& path = "$");

Json order_table_to_json(const OrderTable& table);  // {"d1,d2,...":"p/q" | "inf"}

// {"family","rank","indices":[...],"variant","lift": optional [[d,dhat],...]}
ProductSpec product_spec_from_json(const Json& j, const std::string& path = "$");
LiftMap lift_from_json(const Json& j, const std::string& path = "$");

// {"degrees":[[...]],"objective_values":[...],"max_total_degree":n}
Json degree_set_to_json(const DegreeSet& set);

std::string degree_key(const MultiDegree& d);
MultiDegree degree_from_key(const std::string& key, const std::string& path = "$");

}  // namespace qk
