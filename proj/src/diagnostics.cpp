#include "qdp/diagnostics.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

namespace qdp {

double entropy_bits(const StateVector& state,
                    const std::vector<QubitId>& region) {
  if (region.empty()) return 0.0;
  if (static_cast<int>(region.size()) > 14)
    throw RegionTooLarge("entropy region beyond 14 qubits");
  // the state is pure, so S(R) = S(complement); diagonalize the smaller side
  std::vector<QubitId> reg = region;
  std::sort(reg.begin(), reg.end());
  reg.erase(std::unique(reg.begin(), reg.end()), reg.end());
  if (2 * reg.size() > state.live_qubits().size()) {
    std::vector<QubitId> comp;
    for (const QubitId& q : state.live_qubits())
      if (!std::binary_search(reg.begin(), reg.end(), q)) comp.push_back(q);
    reg = comp;
  }
  if (reg.empty()) return 0.0;
  Eigen::MatrixXcd rho = reduced_density_matrix(state, reg);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho,
                                                     Eigen::EigenvaluesOnly);
  double s = 0.0;
  for (double lam : es.eigenvalues()) {
    if (lam < 1e-12) continue;
    s -= lam * std::log2(lam);
  }
  return s;
}

nlohmann::json KPResult::to_json() const {
  return nlohmann::json{{"s_a", s_a},   {"s_b", s_b},   {"s_c", s_c},
                        {"s_ab", s_ab}, {"s_bc", s_bc}, {"s_ca", s_ca},
                        {"s_abc", s_abc}, {"gamma", gamma}};
}

static std::vector<QubitId> join(const std::vector<QubitId>& x,
                                 const std::vector<QubitId>& y) {
  std::vector<QubitId> u = x;
  u.insert(u.end(), y.begin(), y.end());
  std::sort(u.begin(), u.end());
  u.erase(std::unique(u.begin(), u.end()), u.end());
  return u;
}

KPResult kitaev_preskill(const StateVector& state,
                         const std::vector<QubitId>& a,
                         const std::vector<QubitId>& b,
                         const std::vector<QubitId>& c) {
  KPResult r;
  r.s_a = entropy_bits(state, a);
  r.s_b = entropy_bits(state, b);
  r.s_c = entropy_bits(state, c);
  r.s_ab = entropy_bits(state, join(a, b));
  r.s_bc = entropy_bits(state, join(b, c));
  r.s_ca = entropy_bits(state, join(c, a));
  r.s_abc = entropy_bits(state, join(join(a, b), c));
  r.gamma = r.s_ab + r.s_bc + r.s_ca - r.s_a - r.s_b - r.s_c - r.s_abc;
  return r;
}

double anyon_entropy_shift(const HoneycombTorus& lat,
                           const MeasurementRecord& baseline,
                           const std::set<QubitId>& vertices,
                           const std::vector<QubitId>& region,
                           const SimConfig& cfg) {
  Circuit base = build_d4_protocol(lat);
  OutcomePolicy forced{OutcomePolicy::Forced, 0, baseline};
  RunResult clean = run(base, forced, cfg);
  double s0 = entropy_bits(clean.state, region);
  if (vertices.empty()) return 0.0;
  std::vector<int> vs;
  for (const QubitId& q : vertices) vs.push_back(q.index);
  Circuit modified = insert_vertex_z(base, vs);
  RunResult excited = run(modified, forced, cfg);
  return entropy_bits(excited.state, region) - s0;
}

std::map<int, double> locate_excitations(const StateVector& state,
                                         const StabilizerFamily& family) {
  std::map<int, double> out;
  int plaq = 0;
  for (const StabOp& op : family.ops) {
    if (op.name.rfind("A(", 0) != 0) continue;
    cplx v = expectation(state, op.expr);
    out[plaq++] = v.real() * op.expected;
  }
  return out;
}

std::string entropy_csv(const StateVector& state,
                        const std::vector<Region>& regions) {
  std::string csv = "region,size,entropy_bits\n";
  for (const Region& r : regions) {
    csv += r.tag + "," + std::to_string(r.qubits.size()) + "," +
           std::to_string(entropy_bits(state, r.qubits)) + "\n";
  }
  return csv;
}

int ground_space_dimension(const StabilizerFamily& family,
                           const std::vector<QubitId>& order, double tol) {
  const long dim = 1L << order.size();
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(dim, dim);
  for (const StabOp& op : family.ops) {
    h += 0.5 * (Eigen::MatrixXcd::Identity(dim, dim) -
                double(op.expected) * to_dense(op.expr, order));
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h,
                                                     Eigen::EigenvaluesOnly);
  int n = 0;
  for (double lam : es.eigenvalues())
    if (std::abs(lam) < tol) ++n;
  return n;
}

// --- documented Kitaev-Preskill partitions ---------------------------------

KPPartition kp_partition_toric(int l) {
  if (l < 3) throw TooSmall("toric KP partition needs L >= 3");
  // three contractible sectors meeting pairwise around site (1,1); the
  // complement stays free of noncontractible cycles so S(R) is unpolluted
  KPPartition p;
  auto h = [&](int i, int j) { return edge_q(toric_link_h(l, i, j)); };
  auto v = [&](int i, int j) { return edge_q(toric_link_v(l, i, j)); };
  p.a = {h(0, 1), h(0, 0), v(0, 0)};
  p.b = {v(1, 0), h(1, 0), h(1, 1), v(2, 0)};
  p.c = {v(1, 1), h(1, 2), v(2, 1)};
  return p;
}

KPPartition kp_partition_d4(const HoneycombTorus& lat, int variant) {
  if (lat.L1 < 2 || lat.L2 < 3)
    throw TooSmall("honeycomb KP partition needs L1 >= 2, L2 >= 3");
  // three edge arms meeting at a trivalent junction; variant 0 is centered
  // on vertex A(0,0), variant 1 on vertex B(0,0).  On small tori every
  // region entropy is an integer, so the combination probes the same
  // constant term at both junction types.
  auto eA = [&](int i, int j) { return edge_q(lat.edge_ea(i, j)); };
  auto eB = [&](int i, int j) { return edge_q(lat.edge_eb(i, j)); };
  auto vv = [&](int i, int j) { return edge_q(lat.edge_vv(i, j)); };
  KPPartition p;
  if (variant == 0) {
    p.a = {eA(0, 0), eB(0, 0), vv(1, 2)};
    p.b = {eB(1, 0), eA(1, 0), vv(0, 2)};
    p.c = {vv(0, 0), eA(1, 1), eB(1, 1)};
  } else {
    p.a = {eA(0, 0), eB(1, 0), vv(0, 0)};
    p.b = {eB(0, 0), eA(1, 0), vv(1, 0)};
    p.c = {vv(1, 2), eA(1, 2), eB(0, 2)};
  }
  return p;
}

nlohmann::json kp_regions_json() {
  nlohmann::json j;
  auto dump = [](const KPPartition& p) {
    nlohmann::json r;
    auto ids = [](const std::vector<QubitId>& v) {
      std::vector<int> out;
      for (const QubitId& q : v) out.push_back(q.index);
      std::sort(out.begin(), out.end());
      return out;
    };
    r["a"] = ids(p.a);
    r["b"] = ids(p.b);
    r["c"] = ids(p.c);
    return r;
  };
  j["toric"]["3"] = dump(kp_partition_toric(3));
  HoneycombTorus lat = build_honeycomb_torus(2, 3);
  j["d4"]["2x3"]["variant0"] = dump(kp_partition_d4(lat, 0));
  j["d4"]["2x3"]["variant1"] = dump(kp_partition_d4(lat, 1));
  return j;
}

}  // namespace qdp
