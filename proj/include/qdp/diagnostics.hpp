#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "qdp/circuit.hpp"
#include "qdp/lattice.hpp"
#include "qdp/simulator.hpp"
#include "qdp/stabilizers.hpp"

#include <nlohmann/json.hpp>

namespace qdp {

struct Region {
  std::vector<QubitId> qubits;
  std::string tag;
};

// von Neumann entropy of the region in bits; RegionTooLarge above 14 qubits
double entropy_bits(const StateVector& state,
                    const std::vector<QubitId>& region);

struct KPResult {
  double s_a = 0, s_b = 0, s_c = 0;
  double s_ab = 0, s_bc = 0, s_ca = 0, s_abc = 0;
  double gamma = 0;  // S_AB+S_BC+S_CA - S_A-S_B-S_C - S_ABC
  nlohmann::json to_json() const;
};

KPResult kitaev_preskill(const StateVector& state,
                         const std::vector<QubitId>& a,
                         const std::vector<QubitId>& b,
                         const std::vector<QubitId>& c);

// Entropy change of `region` caused by inserting vertex-Z operators before
// the rotation layer, replaying the same forced outcomes; ImpossibleOutcome
// propagates if the record becomes incompatible.
double anyon_entropy_shift(const HoneycombTorus& lat,
                           const MeasurementRecord& baseline,
                           const std::set<QubitId>& vertices,
                           const std::vector<QubitId>& region,
                           const SimConfig& cfg = {});

// signed per-plaquette <A_p> relative to the expected outcome sign;
// clean plaquettes report 1, excited ones drop toward 0
std::map<int, double> locate_excitations(const StateVector& state,
                                         const StabilizerFamily& family);

std::string entropy_csv(const StateVector& state,
                        const std::vector<Region>& regions);

// Documented Kitaev-Preskill partition choices (see data/kp_regions.json).
struct KPPartition {
  std::vector<QubitId> a, b, c;
};

// Dimension of the joint fixed space of the family: eigenvalue count below
// `tol` of H = sum_i (I - expected_i * s_i)/2 over `order` (<= 12 qubits).
int ground_space_dimension(const StabilizerFamily& family,
                           const std::vector<QubitId>& order,
                           double tol = 1e-6);

KPPartition kp_partition_toric(int l);                        // square torus
KPPartition kp_partition_d4(const HoneycombTorus& lat,
                            int variant = 0);                 // honeycomb
nlohmann::json kp_regions_json();

}  // namespace qdp
