#include "qdp/circuit.hpp"

#include <algorithm>
#include <set>

#include <json.hpp>

namespace qdp {

std::string gate_kind_name(GateKind k) {
  switch (k) {
    case GateKind::H: return "H";
    case GateKind::X: return "X";
    case GateKind::Y: return "Y";
    case GateKind::Z: return "Z";
    case GateKind::S: return "S";
    case GateKind::Tplus: return "T+";
    case GateKind::Tminus: return "T-";
    case GateKind::CZ: return "CZ";
    case GateKind::CCZ: return "CCZ";
    case GateKind::SWAP: return "SWAP";
    case GateKind::MeasX: return "MX";
    case GateKind::MeasPauli: return "MPauli";
  }
  return "?";
}

Gate g1(GateKind k, QubitId q) { return {k, {q}, {}}; }
Gate gcz(QubitId a, QubitId b) { return {GateKind::CZ, {a, b}, {}}; }
Gate gccz(QubitId a, QubitId b, QubitId c) {
  return {GateKind::CCZ, {a, b, c}, {}};
}
Gate gswap(QubitId a, QubitId b) { return {GateKind::SWAP, {a, b}, {}}; }
Gate gmeas_x(QubitId q) { return {GateKind::MeasX, {q}, {}}; }
Gate gmeas_pauli(std::string pauli, std::vector<QubitId> support) {
  return {GateKind::MeasPauli, std::move(support), std::move(pauli)};
}

std::vector<QubitId> Circuit::qubits() const {
  std::set<QubitId> s;
  for (auto& l : layers)
    for (auto& g : l.gates)
      for (auto& q : g.support) s.insert(q);
  return {s.begin(), s.end()};
}

std::vector<QubitId> Circuit::measured_qubits() const {
  std::set<QubitId> s;
  for (auto& l : layers)
    for (auto& g : l.gates)
      if (g.kind == GateKind::MeasX)
        s.insert(g.support[0]);
  return {s.begin(), s.end()};
}

void Circuit::check_layer_disjointness() const {
  for (auto& l : layers) {
    std::set<QubitId> seen;
    for (auto& g : l.gates) {
      if (g.kind != GateKind::MeasX && g.support.size() !=
          (g.kind == GateKind::CCZ ? 3u
           : (g.kind == GateKind::CZ || g.kind == GateKind::SWAP) ? 2u
           : g.kind == GateKind::MeasPauli ? g.support.size() : 1u)) {
        throw Io("gate support size mismatch: " + gate_kind_name(g.kind));
      }
      for (auto& q : g.support)
        if (!seen.insert(q).second)
          throw Io("qubit appears twice in a layer: " + qubit_name(q));
    }
  }
}

std::string Circuit::to_json() const {
  nlohmann::json doc;
  doc["protocol"] = protocol;
  doc["L1"] = L1;
  doc["L2"] = L2;
  doc["rotation_layer"] = rotation_layer;
  doc["layers"] = nlohmann::json::array();
  for (auto& l : layers) {
    nlohmann::json jl = nlohmann::json::array();
    for (auto& g : l.gates) {
      nlohmann::json jg;
      jg["kind"] = gate_kind_name(g.kind);
      jg["support"] = nlohmann::json::array();
      for (auto& q : g.support)
        jg["support"].push_back({{"role", role_name(q.role)},
                                 {"index", q.index}});
      if (!g.pauli.empty()) jg["pauli"] = g.pauli;
      jl.push_back(jg);
    }
    doc["layers"].push_back(jl);
  }
  return doc.dump(2);
}

// --- toric code ------------------------------------------------------------

int toric_link_h(int L, int i, int j) {
  i = ((i % L) + L) % L;
  j = ((j % L) + L) % L;
  return 2 * (j * L + i);
}
int toric_link_v(int L, int i, int j) {
  i = ((i % L) + L) % L;
  j = ((j % L) + L) % L;
  return 2 * (j * L + i) + 1;
}
std::vector<int> toric_star_links(int L, int i, int j) {
  return {toric_link_h(L, i, j), toric_link_h(L, i - 1, j),
          toric_link_v(L, i, j), toric_link_v(L, i, j - 1)};
}
std::vector<int> toric_plaq_links(int L, int i, int j) {
  // plaquette northeast of site (i,j)
  return {toric_link_h(L, i, j), toric_link_h(L, i, j + 1),
          toric_link_v(L, i, j), toric_link_v(L, i + 1, j)};
}

Circuit build_toric_code_protocol(int L) {
  if (L < 2) throw TooSmall("toric code requires L >= 2");
  Circuit c;
  c.protocol = "toric";
  c.L1 = c.L2 = L;
  for (int j = 0; j < L; ++j) {
    for (int i = 0; i < L; ++i) {
      std::vector<QubitId> sup;
      for (int e : toric_star_links(L, i, j)) sup.push_back(edge_q(e));
      c.layers.push_back({{gmeas_pauli("ZZZZ", sup)}});
    }
  }
  c.check_layer_disjointness();
  return c;
}

// --- honeycomb-native D4 ---------------------------------------------------

Circuit build_d4_protocol(const HoneycombTorus& lat, bool sign_swap) {
  Circuit c;
  c.protocol = "d4";
  c.L1 = lat.L1;
  c.L2 = lat.L2;

  // (i) dice CZ layers: ring slot n is a perfect matching plaquette<->vertex
  for (int n = 0; n < 6; ++n) {
    Layer l;
    for (int p = 0; p < lat.num_plaquettes(); ++p)
      l.gates.push_back(gcz(plaq_q(p), vertex_q(lat.ring_vertices[p][n])));
    c.layers.push_back(std::move(l));
  }

  // (ii) rotations: H on all vertices, then T- (red) / T+ (orange)
  c.rotation_layer = static_cast<int>(c.layers.size());
  {
    Layer lh, lt;
    for (int v = 0; v < lat.num_vertices(); ++v) {
      lh.gates.push_back(g1(GateKind::H, vertex_q(v)));
      bool red = lat.sublattice[v] == Sublattice::Red;
      if (sign_swap) red = !red;
      lt.gates.push_back(g1(red ? GateKind::Tminus : GateKind::Tplus,
                            vertex_q(v)));
    }
    c.layers.push_back(std::move(lh));
    c.layers.push_back(std::move(lt));
  }

  // (iii) heavy-hex CZ layers: three explicit matchings
  //  layer 1: A-eA(i,j) and B-eB(i,j)
  //  layer 2: A-vv(i,j) and B-eA(i,j)
  //  layer 3: A-eB(i-1,j) and B-vv(i+1,j-1)
  for (int k = 0; k < 3; ++k) {
    Layer l;
    for (int j = 0; j < lat.L2; ++j) {
      for (int i = 0; i < lat.L1; ++i) {
        int a = lat.vertex_a(i, j), b = lat.vertex_b(i, j);
        int ea, eb;
        switch (k) {
          case 0: ea = lat.edge_ea(i, j); eb = lat.edge_eb(i, j); break;
          case 1: ea = lat.edge_vv(i, j); eb = lat.edge_ea(i, j); break;
          default: ea = lat.edge_eb(i - 1, j); eb = lat.edge_vv(i + 1, j - 1);
        }
        l.gates.push_back(gcz(vertex_q(a), edge_q(ea)));
        l.gates.push_back(gcz(vertex_q(b), edge_q(eb)));
      }
    }
    c.layers.push_back(std::move(l));
  }

  // (iv) measure P and V in X
  {
    Layer l;
    for (int p = 0; p < lat.num_plaquettes(); ++p)
      l.gates.push_back(gmeas_x(plaq_q(p)));
    for (int v = 0; v < lat.num_vertices(); ++v)
      l.gates.push_back(gmeas_x(vertex_q(v)));
    c.layers.push_back(std::move(l));
  }
  c.check_layer_disjointness();
  return c;
}

// --- SPT routes ------------------------------------------------------------

static void spt_common_tail(const HoneycombTorus& lat, Circuit& c) {
  // gauge the symmetry: CZ from each plaquette to its six radiating edges.
  // radial_edges[p][n] is the radiating edge at ring vertex n; schedule by n
  // (each edge radiates from exactly two plaquettes, at distinct slots).
  for (int n = 0; n < 6; ++n) {
    Layer l;
    for (int p = 0; p < lat.num_plaquettes(); ++p)
      l.gates.push_back(gcz(plaq_q(p), edge_q(lat.radial_edges[p][n])));
    c.layers.push_back(std::move(l));
  }
  Layer lm;
  for (int p = 0; p < lat.num_plaquettes(); ++p)
    lm.gates.push_back(gmeas_x(plaq_q(p)));
  c.layers.push_back(std::move(lm));
  Layer lh;
  for (int e = 0; e < lat.num_edges(); ++e)
    lh.gates.push_back(g1(GateKind::H, edge_q(e)));
  c.layers.push_back(std::move(lh));
}

// CCZ triples: the three plaquettes around each vertex.  A(i,j) touches
// p(i,j), p(i-1,j), p(i,j-1); B(i,j) touches p(i,j), p(i+1,j), p(i,j+1)
// (derived from the ring membership of each vertex).
static std::vector<std::array<int, 3>> vertex_triples(
    const HoneycombTorus& lat) {
  std::vector<std::array<int, 3>> out;
  for (int v = 0; v < lat.num_vertices(); ++v) {
    auto t = lat.vertex_plaqs[v];
    std::sort(t.begin(), t.end());
    out.push_back(t);
  }
  return out;
}

static void schedule_ccz(Circuit& c, std::vector<std::array<int, 3>> triples) {
  // greedy disjoint-layer packing; deterministic order
  std::vector<Layer> lays;
  for (auto& t : triples) {
    bool placed = false;
    for (auto& l : lays) {
      bool clash = false;
      for (auto& g : l.gates)
        for (auto q : g.support)
          if (q.index == t[0] || q.index == t[1] || q.index == t[2])
            clash = true;
      if (!clash) {
        l.gates.push_back(gccz(plaq_q(t[0]), plaq_q(t[1]), plaq_q(t[2])));
        placed = true;
        break;
      }
    }
    if (!placed)
      lays.push_back({{gccz(plaq_q(t[0]), plaq_q(t[1]), plaq_q(t[2]))}});
  }
  for (auto& l : lays) c.layers.push_back(std::move(l));
}

Circuit build_d4_spt_route(const HoneycombTorus& lat) {
  Circuit c;
  c.protocol = "d4-spt";
  c.L1 = lat.L1;
  c.L2 = lat.L2;
  schedule_ccz(c, vertex_triples(lat));
  spt_common_tail(lat, c);
  c.check_layer_disjointness();
  return c;
}

Circuit build_q8_spt_route(const HoneycombTorus& lat, int orientation) {
  if (!lat.coloring)
    throw NeedsColoring("Q8 route requires a 3-colorable torus (3|L1, 3|L2)");
  Circuit c;
  c.protocol = "q8-spt";
  c.L1 = lat.L1;
  c.L2 = lat.L2;
  auto triples = vertex_triples(lat);
  // same-color triangles on the plaquette lattice: color is preserved under
  // (1,1) and (2,-1) steps; the two orientations use the third corner at
  // (2,-1) or (-1,2).
  std::vector<std::array<int, 3>> ctri;
  for (int j = 0; j < lat.L2; ++j) {
    for (int i = 0; i < lat.L1; ++i) {
      int p0 = lat.plaq(i, j);
      int p1 = lat.plaq(i + 1, j + 1);
      int p2 = orientation == 0 ? lat.plaq(i + 2, j - 1) : lat.plaq(i - 1, j + 2);
      std::array<int, 3> t{p0, p1, p2};
      std::sort(t.begin(), t.end());
      ctri.push_back(t);
    }
  }
  schedule_ccz(c, ctri);
  schedule_ccz(c, triples);
  spt_common_tail(lat, c);
  c.check_layer_disjointness();
  return c;
}

// --- transformations -------------------------------------------------------

Circuit decompose_swaps(const Circuit& c) {
  Circuit out;
  out.protocol = c.protocol;
  out.L1 = c.L1;
  out.L2 = c.L2;
  out.rotation_layer = -1;
  for (size_t li = 0; li < c.layers.size(); ++li) {
    const Layer& l = c.layers[li];
    bool has_swap = std::any_of(l.gates.begin(), l.gates.end(),
                                [](const Gate& g) {
                                  return g.kind == GateKind::SWAP;
                                });
    if ((int)li == c.rotation_layer)
      out.rotation_layer = static_cast<int>(out.layers.size());
    if (!has_swap) {
      out.layers.push_back(l);
      continue;
    }
    // pairs whose SWAP abuts a CZ on the same pair in the next layer get the
    // three-CZ pattern with the trailing CZ cancelled against that gate
    std::set<std::pair<QubitId, QubitId>> cancel;
    std::vector<Gate> next_keep;
    if (li + 1 < c.layers.size()) {
      for (auto& g : c.layers[li + 1].gates) {
        bool used = false;
        if (g.kind == GateKind::CZ) {
          auto key = std::minmax(g.support[0], g.support[1]);
          for (auto& s : l.gates) {
            if (s.kind == GateKind::SWAP &&
                std::minmax(s.support[0], s.support[1]) == key) {
              cancel.insert(key);
              used = true;
            }
          }
        }
        if (!used) next_keep.push_back(g);
      }
    }
    // SWAP = (H(x)H . CZ)^3; in circuit order: HH, CZ, HH, CZ, HH, CZ
    Layer hh0, cz1, hh1, cz2, hh2, cz3;
    for (auto& g : l.gates) {
      if (g.kind != GateKind::SWAP) {
        cz1.gates.push_back(g);  // stationary gates share the first sub-layer
        continue;
      }
      QubitId a = g.support[0], b = g.support[1];
      for (Layer* hh : {&hh0, &hh1, &hh2}) {
        hh->gates.push_back(g1(GateKind::H, a));
        hh->gates.push_back(g1(GateKind::H, b));
      }
      cz1.gates.push_back(gcz(a, b));
      cz2.gates.push_back(gcz(a, b));
      if (!cancel.count(std::minmax(a, b))) cz3.gates.push_back(gcz(a, b));
    }
    out.layers.push_back(std::move(hh0));
    out.layers.push_back(std::move(cz1));
    out.layers.push_back(std::move(hh1));
    out.layers.push_back(std::move(cz2));
    out.layers.push_back(std::move(hh2));
    if (!cz3.gates.empty()) out.layers.push_back(std::move(cz3));
    if (!cancel.empty()) {
      if (!next_keep.empty()) out.layers.push_back({std::move(next_keep)});
      ++li;
    }
  }
  out.check_layer_disjointness();
  return out;
}

Circuit insert_vertex_z(const Circuit& c, const std::vector<int>& vertices) {
  if (vertices.empty()) return c;
  if (c.rotation_layer < 0)
    throw WrongProtocol("circuit has no rotation layer: " + c.protocol);
  Circuit out = c;
  Layer lz;
  for (int v : vertices) lz.gates.push_back(g1(GateKind::Z, vertex_q(v)));
  out.layers.insert(out.layers.begin() + out.rotation_layer, std::move(lz));
  ++out.rotation_layer;
  out.check_layer_disjointness();
  return out;
}

int two_body_depth(const Circuit& c) {
  int d = 0;
  for (auto& l : c.layers) {
    for (auto& g : l.gates) {
      if (g.kind == GateKind::CZ || g.kind == GateKind::SWAP) {
        ++d;
        break;
      }
    }
  }
  return d;
}

int ccz_depth(const Circuit& c) {
  int d = 0;
  for (auto& l : c.layers) {
    for (auto& g : l.gates) {
      if (g.kind == GateKind::CCZ) {
        ++d;
        break;
      }
    }
  }
  return d;
}

}  // namespace qdp
