#pragma once

#include <string>
#include <vector>

#include "qdp/circuit.hpp"
#include "qdp/lattice.hpp"
#include "qdp/simulator.hpp"

namespace qdp {

enum class Stage {
  DiceCluster, ColorCode, Rotated, Gauged, FinalD4, FinalQ8, Toric
};

std::string stage_name(Stage s);

struct StabOp {
  std::string name;
  OperatorExpr expr;   // Hermitian, squares to identity on its support
  int expected;        // +-1, incorporating recorded outcomes
};

struct StabilizerFamily {
  Stage stage;
  std::vector<StabOp> ops;
};

// Cluster stabilizers X_q prod Z_neighbors on the dice graph (P and V qubits),
// valid after the CZ(p,v) stage.
StabilizerFamily dice_cluster_family(const HoneycombTorus& lat);

// Color code on the vertex qubits after measuring the plaquettes:
// A_p = x_p prod_n Z_n, B_p = prod_n X_n over the six ring vertices.
StabilizerFamily color_code_family(const HoneycombTorus& lat,
                                   const MeasurementRecord& record);

// The same family conjugated through the vertex rotations (H then T-/T+):
// Atilde_p = x_p prod_n (X_n +- Y_n)/sqrt2 (+ on the red sublattice),
// Btilde_p = prod_n Z_n.
StabilizerFamily rotated_family(const HoneycombTorus& lat,
                                const MeasurementRecord& record);

// After the CZ(v,e) stage: Atilde_p picks up C_p = prod_n Z on the six
// radiating edges (ring-edge Z's cancel pairwise), Btilde_p is unchanged,
// plus D_e = Z_v X_e Z_v' for every edge.
StabilizerFamily gauged_family(const HoneycombTorus& lat,
                               const MeasurementRecord& record);

// Final family on the edge qubits (after the trailing Hadamard on edges):
// A_p = x_p prod_{v in p} x_v * prod_n X_{r_n} * prod_n CZ(e_{n-1}, e_n),
// B1_p = Z e0 e2 e4, B2_p = Z e1 e3 e5 on the ring edges.
StabilizerFamily d4_family(const HoneycombTorus& lat,
                           const MeasurementRecord& record);

// D4 family with an additional same-color CZ factor in each A_p (one CZ per
// color triangle through p, placed on opposite ring edges).  The exact
// edge-local form of this factor is not fully determined by the derivation;
// the construction here is structural best-effort.
StabilizerFamily q8_family(const HoneycombTorus& lat,
                           const MeasurementRecord& record);

struct VerifyItem {
  std::string name;
  cplx value;
  int expected;
  bool pass;
};

struct VerifyReport {
  Stage stage;
  double tol;
  std::vector<VerifyItem> items;
  bool all_pass;
  std::string to_json() const;
};

VerifyReport verify(const StateVector& state, const StabilizerFamily& family,
                    double tol = 1e-9);

// Dense-matrix equality on the union support (<= 12 qubits, else
// SupportTooLarge); max-norm tolerance 1e-12.
bool check_identity(const OperatorExpr& lhs, const OperatorExpr& rhs);

}  // namespace qdp
