#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "qdp/lattice.hpp"

namespace qdp {

enum class GateKind : uint8_t {
  H, X, Y, Z, S, Tplus, Tminus, CZ, CCZ, SWAP, MeasX, MeasPauli
};

std::string gate_kind_name(GateKind k);

// MeasPauli is a projective measurement of a multi-qubit Pauli product (used
// by the toric-code protocol, which measures star operators directly); its
// Pauli string is stored alongside the support.
struct Gate {
  GateKind kind;
  std::vector<QubitId> support;
  std::string pauli;  // only for MeasPauli, e.g. "XXXX"
};

Gate g1(GateKind k, QubitId q);
Gate gcz(QubitId a, QubitId b);
Gate gccz(QubitId a, QubitId b, QubitId c);
Gate gswap(QubitId a, QubitId b);
Gate gmeas_x(QubitId q);
Gate gmeas_pauli(std::string pauli, std::vector<QubitId> support);

struct Layer {
  std::vector<Gate> gates;
};

struct Circuit {
  std::string protocol;
  int L1 = 0, L2 = 0;
  std::vector<Layer> layers;
  // index of the vertex-rotation layer (H layer), -1 if absent; used by
  // insert_vertex_z
  int rotation_layer = -1;

  std::vector<QubitId> qubits() const;        // all touched qubits, sorted
  std::vector<QubitId> measured_qubits() const;
  void check_layer_disjointness() const;      // throws Io on violation
  std::string to_json() const;
};

// Outcome policy for measurements.
struct OutcomePolicy {
  enum Kind { Sampled, Forced, AllPlus } kind = Sampled;
  uint64_t seed = 0;
  std::map<QubitId, int> forced;  // +1 / -1
};

// map qubit -> +-1 outcome
using MeasurementRecord = std::map<QubitId, int>;

// Protocol builders ---------------------------------------------------------

// Toric code on an LxL square torus: qubits on links, star operators measured
// directly as multi-qubit Pauli measurements.
Circuit build_toric_code_protocol(int L);
// Link/star helpers for the square torus (2 links per site).
int toric_link_h(int L, int i, int j);
int toric_link_v(int L, int i, int j);
std::vector<int> toric_star_links(int L, int i, int j);
std::vector<int> toric_plaq_links(int L, int i, int j);

// Honeycomb-native protocol: CZ(p,v) dice layers, vertex rotations
// (H then Tminus on red / Tplus on orange; sign_swap flips the sublattice
// sign assignment), CZ(v,e) heavy-hex layers, MeasX on P and V.
Circuit build_d4_protocol(const HoneycombTorus& lat, bool sign_swap = false);

// Square-grid compiled protocol (6-step schedule).  native=false keeps SWAP
// as a primitive; native=true decomposes SWAPs and applies the one-layer CZ
// cancellation.  Throws NotGridLocal on internal consistency failure.
Circuit build_d4_grid_protocol(const HoneycombTorus& lat,
                               const SquareGridEmbedding& emb, bool native);

// SPT-then-gauge routes: CCZ hypergraph state on plaquettes, CZ(p, radiating
// edge) gauging layers, MeasX on plaquettes, final H on edges.
Circuit build_d4_spt_route(const HoneycombTorus& lat);
// Q8 adds same-color CCZ triangles; orientation selects one of the two
// triangle orientations on the color sublattice.  Throws NeedsColoring.
Circuit build_q8_spt_route(const HoneycombTorus& lat, int orientation = 0);

// Transformations -----------------------------------------------------------

Circuit decompose_swaps(const Circuit& c);
Circuit insert_vertex_z(const Circuit& c, const std::vector<int>& vertices);

int two_body_depth(const Circuit& c);
int ccz_depth(const Circuit& c);

}  // namespace qdp
