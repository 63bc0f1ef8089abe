#pragma once

#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qdp/errors.hpp"

#include <nlohmann/json.hpp>

namespace qdp {

// Finite group given by its multiplication table.
struct FiniteGroup {
  std::string name;
  std::vector<std::string> labels;
  std::vector<std::vector<int>> mul;  // mul[a][b] = a*b
  int identity = 0;

  int size() const { return static_cast<int>(labels.size()); }
  int op(int a, int b) const { return mul[a][b]; }
  int inv(int a) const;
  int order(int a) const;
  bool is_abelian() const;
  // exhaustive invariant check: Latin square + associativity
  bool valid() const;
};

// D4, Q8, Z2, Z2^2, Z2^3, Z2^4; throws UnknownGroup otherwise
FiniteGroup make_group(const std::string& name);
FiniteGroup product_group(const FiniteGroup& a, const FiniteGroup& b);
// subgroup on the given element subset, with map back to parent indices
FiniteGroup subgroup(const FiniteGroup& g, const std::vector<int>& elems);

struct CharacterTable {
  std::vector<std::vector<int>> classes;  // element indices, sorted
  std::vector<int> class_of;              // element -> class index
  // chi[irrep][class]; all values here are Gaussian integers, exact in double
  std::vector<std::vector<std::complex<double>>> chi;
  std::vector<std::string> irrep_names;

  int num_classes() const { return static_cast<int>(classes.size()); }
  int num_irreps() const { return static_cast<int>(chi.size()); }
  int dim(int irrep) const {
    return static_cast<int>(std::lround(chi[irrep][0].real()));
  }
  std::complex<double> value(int irrep, int element) const {
    return chi[irrep][class_of[element]];
  }
  // kernel of a 1-dim irrep: elements with chi = 1
  std::vector<int> kernel(int irrep) const;
};

// Works for abelian groups and for groups whose non-linear part is a single
// irrep (covers D4 and Q8); orthogonality is verified before returning.
CharacterTable character_table(const FiniteGroup& g);

struct AnyonLabel {
  int class_index = 0;
  int rep = 0;                   // class representative (lowest element index)
  std::vector<int> centralizer;  // parent-group element indices
  int irrep = 0;                 // irrep index in the centralizer table
  int dim = 1;                   // quantum dimension |[g]| * dim(irrep)
  std::complex<double> theta;    // topological spin chi(g)/chi(1)
  std::string name;
  // centralizer irrep character on parent elements (defined on centralizer)
  std::vector<std::complex<double>> chi_parent;
};

std::vector<AnyonLabel> double_anyons(const FiniteGroup& g);
inline std::complex<double> spin(const AnyonLabel& a) { return a.theta; }

Eigen::MatrixXcd s_matrix(const FiniteGroup& g,
                          const std::vector<AnyonLabel>& anyons);

// Verlinde fusion multiset: counts per anyon index; throws NonIntegerFusion
// if coefficients are not nonnegative integers within 1e-9
std::vector<int> fusion(const Eigen::MatrixXcd& s, int a, int b);

struct LagrangianReport {
  bool ok = false;
  std::string failure;  // empty when ok
};

LagrangianReport is_lagrangian(const FiniteGroup& g,
                               const std::vector<AnyonLabel>& anyons,
                               const Eigen::MatrixXcd& s,
                               const std::vector<int>& subset);

struct Table1Report {
  bool ok = false;
  std::vector<std::string> lines;
};

// checks the published bilayer <-> D(D4) correspondence rows
Table1Report table1_check();

nlohmann::json to_json(const AnyonLabel& a);
nlohmann::json anyons_json(const FiniteGroup& g,
                           const std::vector<AnyonLabel>& anyons);

}  // namespace qdp
