#include "qdp/lattice.hpp"

#include <algorithm>
#include <set>

#include <json.hpp>

namespace qdp {

std::string role_name(Role r) {
  switch (r) {
    case Role::Vertex: return "vertex";
    case Role::Edge: return "edge";
    case Role::Plaquette: return "plaquette";
    case Role::GridHelper: return "grid-helper";
  }
  return "?";
}

std::string qubit_name(const QubitId& q) {
  return role_name(q.role) + ":" + std::to_string(q.index);
}

HoneycombTorus build_honeycomb_torus(int L1, int L2) {
  if (L1 < 2 || L2 < 2) {
    throw TooSmall("honeycomb torus requires L1 >= 2 and L2 >= 2, got (" +
                   std::to_string(L1) + "," + std::to_string(L2) + ")");
  }
  HoneycombTorus lat;
  lat.L1 = L1;
  lat.L2 = L2;
  const int nv = lat.num_vertices();
  const int ne = lat.num_edges();
  const int np = lat.num_plaquettes();

  lat.sublattice.resize(nv);
  for (int v = 0; v < nv; ++v) {
    lat.sublattice[v] = (v % 2 == 0) ? Sublattice::Red : Sublattice::Orange;
  }

  lat.edge_vertices.resize(ne);
  for (int j = 0; j < L2; ++j) {
    for (int i = 0; i < L1; ++i) {
      lat.edge_vertices[lat.edge_ea(i, j)] = {lat.vertex_a(i, j), lat.vertex_b(i, j)};
      lat.edge_vertices[lat.edge_eb(i, j)] = {lat.vertex_b(i, j), lat.vertex_a(i + 1, j)};
      lat.edge_vertices[lat.edge_vv(i, j)] = {lat.vertex_a(i, j), lat.vertex_b(i - 1, j + 1)};
    }
  }

  lat.vertex_edges.resize(nv);
  for (int j = 0; j < L2; ++j) {
    for (int i = 0; i < L1; ++i) {
      lat.vertex_edges[lat.vertex_a(i, j)] = {lat.edge_ea(i, j), lat.edge_eb(i - 1, j),
                                              lat.edge_vv(i, j)};
      lat.vertex_edges[lat.vertex_b(i, j)] = {lat.edge_ea(i, j), lat.edge_eb(i, j),
                                              lat.edge_vv(i + 1, j - 1)};
    }
  }

  lat.ring_vertices.resize(np);
  lat.ring_edges.resize(np);
  for (int j = 0; j < L2; ++j) {
    for (int i = 0; i < L1; ++i) {
      const int p = lat.plaq(i, j);
      lat.ring_vertices[p] = {lat.vertex_a(i, j),     lat.vertex_b(i, j),
                              lat.vertex_a(i + 1, j), lat.vertex_b(i, j + 1),
                              lat.vertex_a(i, j + 1), lat.vertex_b(i - 1, j + 1)};
      lat.ring_edges[p] = {lat.edge_ea(i, j),     lat.edge_eb(i, j),
                           lat.edge_vv(i + 1, j), lat.edge_ea(i, j + 1),
                           lat.edge_eb(i - 1, j + 1), lat.edge_vv(i, j)};
    }
  }

  // Derived incidences.
  lat.vertex_plaqs.assign(nv, {-1, -1, -1});
  std::vector<int> vp_fill(nv, 0);
  lat.edge_plaqs.assign(ne, {-1, -1});
  std::vector<int> ep_fill(ne, 0);
  lat.radial_edges.resize(np);
  for (int p = 0; p < np; ++p) {
    for (int n = 0; n < 6; ++n) {
      const int v = lat.ring_vertices[p][n];
      lat.vertex_plaqs[v][vp_fill[v]++] = p;
      const int e = lat.ring_edges[p][n];
      lat.edge_plaqs[e][ep_fill[e]++] = p;
      // Radiating edge at ring vertex n: incident edge not equal to the two
      // ring edges meeting there (edges n-1 and n in cyclic convention).
      const int e_prev = lat.ring_edges[p][(n + 5) % 6];
      const int e_here = lat.ring_edges[p][n];
      for (int k = 0; k < 3; ++k) {
        const int cand = lat.vertex_edges[v][k];
        if (cand != e_prev && cand != e_here) {
          lat.radial_edges[p][n] = cand;
        }
      }
    }
  }

  // Validate invariants (cheap, done once at construction).
  for (int v = 0; v < nv; ++v) {
    if (vp_fill[v] != 3) throw Io("vertex-plaquette incidence corrupt");
    std::set<int> es(lat.vertex_edges[v].begin(), lat.vertex_edges[v].end());
    if (es.size() != 3) throw Io("vertex with duplicate incident edges");
  }
  for (int e = 0; e < ne; ++e) {
    if (ep_fill[e] != 2) throw Io("edge-plaquette incidence corrupt");
    if (lat.edge_vertices[e][0] == lat.edge_vertices[e][1]) {
      throw Io("degenerate edge");
    }
  }
  for (int p = 0; p < np; ++p) {
    for (int n = 0; n < 6; ++n) {
      const int e = lat.ring_edges[p][n];
      const int v1 = lat.ring_vertices[p][n];
      const int v2 = lat.ring_vertices[p][(n + 1) % 6];
      const auto& ev = lat.edge_vertices[e];
      const bool match = (ev[0] == v1 && ev[1] == v2) || (ev[0] == v2 && ev[1] == v1);
      if (!match) throw Io("ring edge does not connect its ring vertices");
      if (lat.sublattice[v1] == lat.sublattice[v2]) {
        throw Io("ring sublattice alternation violated");
      }
    }
  }

  if (L1 % 3 == 0 && L2 % 3 == 0) {
    std::vector<int> col(np);
    for (int j = 0; j < L2; ++j) {
      for (int i = 0; i < L1; ++i) {
        col[lat.plaq(i, j)] = (i + 2 * j) % 3;
      }
    }
    // Proper-coloring check over edge-adjacent plaquette pairs.
    for (int e = 0; e < ne; ++e) {
      if (col[lat.edge_plaqs[e][0]] == col[lat.edge_plaqs[e][1]]) {
        throw Io("plaquette coloring not proper");
      }
    }
    lat.coloring = std::move(col);
  }

  return lat;
}

std::string HoneycombTorus::to_json() const {
  nlohmann::json doc;
  doc["L1"] = L1;
  doc["L2"] = L2;
  doc["counts"] = {{"vertices", num_vertices()},
                   {"edges", num_edges()},
                   {"plaquettes", num_plaquettes()}};
  doc["sublattice"] = nlohmann::json::array();
  for (auto s : sublattice) {
    doc["sublattice"].push_back(s == Sublattice::Red ? "red" : "orange");
  }
  doc["edges"] = edge_vertices;
  doc["plaquette_rings"] = nlohmann::json::array();
  for (int p = 0; p < num_plaquettes(); ++p) {
    doc["plaquette_rings"].push_back(
        {{"vertices", ring_vertices[p]}, {"edges", ring_edges[p]}});
  }
  if (coloring) {
    doc["coloring"] = *coloring;
  } else {
    doc["coloring"] = nullptr;
  }
  return doc.dump(2);
}

GridCell SquareGridEmbedding::normalize(int row, int col) const {
  // (row + height) ~ (row, col - shear); columns wrap modulo width.
  int k = row >= 0 ? row / height : -((-row + height - 1) / height);
  row -= k * height;
  col -= shear * k;
  col = ((col % width) + width) % width;
  return {row, col};
}

bool SquareGridEmbedding::adjacent(const GridCell& a, const GridCell& b) const {
  const GridCell r = normalize(a.row, a.col + 1);
  const GridCell l = normalize(a.row, a.col - 1);
  const GridCell u = normalize(a.row + 1, a.col);
  const GridCell d = normalize(a.row - 1, a.col);
  return b == r || b == l || b == u || b == d;
}

const GridCell& SquareGridEmbedding::at(const QubitId& q) const {
  auto it = position.find(q);
  if (it == position.end()) {
    throw Io("qubit has no grid position: " + qubit_name(q));
  }
  return it->second;
}

SquareGridEmbedding build_square_grid_embedding(const HoneycombTorus& lat) {
  SquareGridEmbedding emb;
  emb.width = 4 * lat.L1;
  emb.height = 2 * lat.L2;
  emb.shear = 2 * lat.L2;

  std::set<GridCell> used;
  auto place = [&](QubitId q, int row, int col) {
    GridCell c = emb.normalize(row, col);
    if (!used.insert(c).second) {
      throw Io("grid embedding placement collision at (" +
               std::to_string(c.row) + "," + std::to_string(c.col) + ")");
    }
    emb.position[q] = c;
  };

  for (int j = 0; j < lat.L2; ++j) {
    for (int i = 0; i < lat.L1; ++i) {
      const int bx = 4 * i + 2 * j;
      place(vertex_q(lat.vertex_a(i, j)), 2 * j, bx);
      place(edge_q(lat.edge_ea(i, j)), 2 * j, bx + 1);
      place(vertex_q(lat.vertex_b(i, j)), 2 * j, bx + 2);
      place(edge_q(lat.edge_eb(i, j)), 2 * j, bx + 3);
      place(edge_q(lat.edge_vv(i, j)), 2 * j + 1, bx);
    }
  }
  // Helper qubits fill the remaining cells; plaquette qubits start on helpers'
  // rows as well, assigned by the grid compiler's schedule (they have no fixed
  // "home": their positions are part of the compiled circuit).  We park each
  // plaquette qubit on a distinct free cell adjacent to its unit cell and mark
  // every other free cell as a helper.
  for (int j = 0; j < lat.L2; ++j) {
    for (int i = 0; i < lat.L1; ++i) {
      const int bx = 4 * i + 2 * j;
      place(plaq_q(lat.plaq(i, j)), 2 * j + 1, bx + 2);
    }
  }
  int h = 0;
  for (int row = 0; row < emb.height; ++row) {
    for (int col = 0; col < emb.width; ++col) {
      if (!used.contains(GridCell{row, col})) {
        QubitId q = helper_q(h++);
        emb.helpers.push_back(q);
        emb.position[q] = GridCell{row, col};
        used.insert(GridCell{row, col});
      }
    }
  }
  return emb;
}

}  // namespace qdp
