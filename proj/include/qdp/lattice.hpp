#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qdp/errors.hpp"

namespace qdp {

// Roles of physical qubits in the protocols.
enum class Role : uint8_t { Vertex, Edge, Plaquette, GridHelper };

std::string role_name(Role r);

// A qubit is identified by (role, ordinal-within-role); stable per lattice.
struct QubitId {
  Role role;
  int index;

  friend bool operator==(const QubitId&, const QubitId&) = default;
  friend auto operator<=>(const QubitId&, const QubitId&) = default;
};

inline QubitId vertex_q(int i) { return {Role::Vertex, i}; }
inline QubitId edge_q(int i) { return {Role::Edge, i}; }
inline QubitId plaq_q(int i) { return {Role::Plaquette, i}; }
inline QubitId helper_q(int i) { return {Role::GridHelper, i}; }

std::string qubit_name(const QubitId& q);

enum class Sublattice : uint8_t { Red, Orange };  // Red = A, Orange = B

// Honeycomb lattice on a torus of L1 x L2 unit cells.  Each unit cell (i, j)
// carries two vertices A(i,j) (red) and B(i,j) (orange), three edges and one
// plaquette.  Qubits live on vertices, edges and plaquettes.
//
// Indexing (c = j*L1 + i is the cell ordinal):
//   vertex A(i,j) -> 2c, vertex B(i,j) -> 2c + 1
//   edges:  eA(i,j) -> 3c   connects A(i,j) - B(i,j)
//           eB(i,j) -> 3c+1 connects B(i,j) - A(i+1,j)
//           vv(i,j) -> 3c+2 connects A(i,j) - B(i-1,j+1)
//   plaquette p(i,j) -> c
//
// Plaquette rings (counterclockwise, n = 1..6, arrays 0-based):
//   vertices: A(i,j), B(i,j), A(i+1,j), B(i,j+1), A(i,j+1), B(i-1,j+1)
//   edges:    eA(i,j), eB(i,j), vv(i+1,j), eA(i,j+1), eB(i-1,j+1), vv(i,j)
// Ring edge n connects ring vertices n and n+1 (cyclically).
class HoneycombTorus {
 public:
  int L1 = 0, L2 = 0;

  int num_vertices() const { return 2 * L1 * L2; }
  int num_edges() const { return 3 * L1 * L2; }
  int num_plaquettes() const { return L1 * L2; }

  // Per-vertex data.
  std::vector<Sublattice> sublattice;          // [vertex]
  std::vector<std::array<int, 3>> vertex_edges;    // [vertex] -> 3 edge ids
  std::vector<std::array<int, 3>> vertex_plaqs;    // [vertex] -> 3 plaquette ids

  // Per-edge data.
  std::vector<std::array<int, 2>> edge_vertices;   // [edge] -> endpoint vertices
  std::vector<std::array<int, 2>> edge_plaqs;      // [edge] -> bordering plaquettes

  // Per-plaquette data.
  std::vector<std::array<int, 6>> ring_vertices;   // [plaq][n]
  std::vector<std::array<int, 6>> ring_edges;      // [plaq][n]
  // Radiating edge at ring vertex n: the one incident edge not on the ring.
  std::vector<std::array<int, 6>> radial_edges;    // [plaq][n]

  // Optional proper 3-coloring of plaquettes, present iff 3|L1 and 3|L2.
  std::optional<std::vector<int>> coloring;        // values 0 (R), 1 (G), 2 (B)

  // Cell helpers.
  int cell(int i, int j) const {
    i = ((i % L1) + L1) % L1;
    j = ((j % L2) + L2) % L2;
    return j * L1 + i;
  }
  int vertex_a(int i, int j) const { return 2 * cell(i, j); }
  int vertex_b(int i, int j) const { return 2 * cell(i, j) + 1; }
  int edge_ea(int i, int j) const { return 3 * cell(i, j); }
  int edge_eb(int i, int j) const { return 3 * cell(i, j) + 1; }
  int edge_vv(int i, int j) const { return 3 * cell(i, j) + 2; }
  int plaq(int i, int j) const { return cell(i, j); }

  std::string to_json() const;
};

// Builds and validates the lattice.  Throws TooSmall for L1 < 2 or L2 < 2.
HoneycombTorus build_honeycomb_torus(int L1, int L2);

// Square-grid embedding used by the grid compiler.  Cells are (row, col) on a
// width x height grid with the torus identification
//   (row, col) ~ (row, col + width) and (row + height, col - shear) ~ (row, col)
// realised by normalize().  Helper ("purple") qubits fill cells not used by
// lattice qubits.
struct GridCell {
  int row = 0, col = 0;
  friend bool operator==(const GridCell&, const GridCell&) = default;
  friend auto operator<=>(const GridCell&, const GridCell&) = default;
};

class SquareGridEmbedding {
 public:
  int width = 0, height = 0;
  int shear = 0;  // horizontal shift applied when wrapping vertically
  std::map<QubitId, GridCell> position;   // injective; includes helpers
  std::vector<QubitId> helpers;           // the purple qubits

  GridCell normalize(int row, int col) const;
  bool adjacent(const GridCell& a, const GridCell& b) const;
  const GridCell& at(const QubitId& q) const;
};

// Lays lattice qubits out on the square grid in the periodic tiled pattern
// used by the grid compiler (one 4 x 2 block of cells per lattice unit cell).
SquareGridEmbedding build_square_grid_embedding(const HoneycombTorus& lat);

}  // namespace qdp
