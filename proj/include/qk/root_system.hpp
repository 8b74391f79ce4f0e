#pragma once

#include <Eigen/Core>

#include <string>
#include <vector>

#include "qk/rational.hpp"

namespace qk {

enum class Family : char { A = 'A', B = 'B', C = 'C', D = 'D', E = 'E', F = 'F', G = 'G' };

Family family_from_char(char c);

// (family, rank) with the classical rank constraints:
// A(n>=1), B(n>=2), C(n>=2), D(n>=3), E(6..8), F(4), G(2).
struct RootSystemType {
  Family family;
  int rank;

  std::string name() const { return std::string(1, static_cast<char>(family)) + std::to_string(rank); }
  bool simply_laced() const { return family == Family::A || family == Family::D || family == Family::E; }
  friend bool operator==(const RootSystemType&, const RootSystemType&) = default;
};

// Degrees d = sum d_i alpha-check_i and weights lambda = sum lambda_i omega_i,
// both as integer coordinate vectors in the simple bases.
using CorootVector = Eigen::VectorXi;
using WeightVector = Eigen::VectorXi;

// Exact root-system data. Simple roots follow Bourbaki numbering; B_n keeps the
// short root last, C_n the long root last, G2 is ordered (long, short). gram is
// the symmetrized Cartan matrix normalized so short roots have (alpha,alpha)=2;
// under that normalization every entry is an integer and gram = D * cartan with
// D = diag(gram_ii / 2). Products of simple types are block diagonal.
class RootSystem {
 public:
  explicit RootSystem(RootSystemType type);
  explicit RootSystem(const std::vector<RootSystemType>& factors);

  int rank() const { return static_cast<int>(gram_.rows()); }
  const std::vector<RootSystemType>& factors() const { return factors_; }
  bool simple() const { return factors_.size() == 1; }
  const RootSystemType& type() const;
  bool simply_laced() const;
  bool has_E8_factor() const;

  const Eigen::MatrixXi& gram() const { return gram_; }
  const Eigen::MatrixXi& cartan() const { return cartan_; }
  VecR symmetrizer() const;  // diagonal of D, gram = D * cartan

 private:
  std::vector<RootSystemType> factors_;
  Eigen::MatrixXi gram_;
  Eigen::MatrixXi cartan_;
};

// (d, lambda) = sum d_i lambda_i.
long long pairing(const CorootVector& d, const WeightVector& lambda);

// (d, d) = d^T gram d; always an even integer under the normalization here.
long long norm(const RootSystem& sys, const CorootVector& d);

// r(d): number of strictly positive coordinates. Requires d >= 0.
int support_size(const CorootVector& d);

WeightVector rho(const RootSystem& sys);  // the all-ones weight

// m_d = r(d) + (d,d)/2. Requires d >= 0.
long long m_exponent(const RootSystem& sys, const CorootVector& d);

// k_d = (rho,d) + (d,d)/2. Simply-laced types only; requires d >= 0.
long long k_exponent(const RootSystem& sys, const CorootVector& d);

}  // namespace qk
