#include "qdp/stabilizers.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include <json.hpp>

namespace qdp {

std::string stage_name(Stage s) {
  switch (s) {
    case Stage::DiceCluster: return "dice-cluster";
    case Stage::ColorCode: return "color-code";
    case Stage::Rotated: return "rotated";
    case Stage::Gauged: return "gauged";
    case Stage::FinalD4: return "final-D4";
    case Stage::FinalQ8: return "final-Q8";
    case Stage::Toric: return "toric";
  }
  return "?";
}

namespace {

int outcome(const MeasurementRecord& rec, QubitId q) {
  auto it = rec.find(q);
  if (it == rec.end())
    throw MissingOutcome("record lacks outcome for " + qubit_name(q));
  return it->second;
}

// expand a product of two-choice single-qubit factors into a sum of terms
OperatorExpr expand(cplx scalar,
                    const std::vector<std::array<std::pair<cplx, OpFactor>, 2>>&
                        choices,
                    const std::vector<OpFactor>& tail) {
  OperatorExpr out;
  const size_t n = choices.size();
  for (size_t mask = 0; mask < (size_t{1} << n); ++mask) {
    OpTerm t;
    t.scalar = scalar;
    for (size_t k = 0; k < n; ++k) {
      const auto& [c, f] = choices[k][(mask >> k) & 1];
      t.scalar *= c;
      t.factors.push_back(f);
    }
    for (const auto& f : tail) t.factors.push_back(f);
    out.terms.push_back(std::move(t));
  }
  return out;
}

}  // namespace

StabilizerFamily dice_cluster_family(const HoneycombTorus& lat) {
  StabilizerFamily fam{Stage::DiceCluster, {}};
  for (int p = 0; p < lat.num_plaquettes(); ++p) {
    std::vector<OpFactor> fs{fpauli('X', plaq_q(p))};
    for (int v : lat.ring_vertices[p]) fs.push_back(fpauli('Z', vertex_q(v)));
    fam.ops.push_back({"K(p" + std::to_string(p) + ")",
                       single_term(1, fs), 1});
  }
  for (int v = 0; v < lat.num_vertices(); ++v) {
    std::vector<OpFactor> fs{fpauli('X', vertex_q(v))};
    for (int p : lat.vertex_plaqs[v]) fs.push_back(fpauli('Z', plaq_q(p)));
    fam.ops.push_back({"K(v" + std::to_string(v) + ")",
                       single_term(1, fs), 1});
  }
  return fam;
}

StabilizerFamily color_code_family(const HoneycombTorus& lat,
                                   const MeasurementRecord& record) {
  StabilizerFamily fam{Stage::ColorCode, {}};
  for (int p = 0; p < lat.num_plaquettes(); ++p) {
    int xp = outcome(record, plaq_q(p));
    std::vector<OpFactor> za, xb;
    for (int v : lat.ring_vertices[p]) {
      za.push_back(fpauli('Z', vertex_q(v)));
      xb.push_back(fpauli('X', vertex_q(v)));
    }
    fam.ops.push_back({"A(p" + std::to_string(p) + ")",
                       single_term(1, za), xp});
    fam.ops.push_back({"B(p" + std::to_string(p) + ")",
                       single_term(1, xb), 1});
  }
  return fam;
}

// two-choice factor for the rotated Z_n: (X_n +- Y_n)/sqrt2, + on red
static std::array<std::pair<cplx, OpFactor>, 2> rotated_z(
    const HoneycombTorus& lat, int v) {
  const double r = 1.0 / std::numbers::sqrt2;
  double sign = lat.sublattice[v] == Sublattice::Red ? 1.0 : -1.0;
  return {std::pair{cplx(r), fpauli('X', vertex_q(v))},
          std::pair{cplx(sign * r), fpauli('Y', vertex_q(v))}};
}

StabilizerFamily rotated_family(const HoneycombTorus& lat,
                                const MeasurementRecord& record) {
  StabilizerFamily fam{Stage::Rotated, {}};
  for (int p = 0; p < lat.num_plaquettes(); ++p) {
    int xp = outcome(record, plaq_q(p));
    std::vector<std::array<std::pair<cplx, OpFactor>, 2>> ch;
    std::vector<OpFactor> zb;
    for (int v : lat.ring_vertices[p]) {
      ch.push_back(rotated_z(lat, v));
      zb.push_back(fpauli('Z', vertex_q(v)));
    }
    fam.ops.push_back({"At(p" + std::to_string(p) + ")",
                       expand(1, ch, {}), xp});
    fam.ops.push_back({"Bt(p" + std::to_string(p) + ")",
                       single_term(1, zb), 1});
  }
  return fam;
}

StabilizerFamily gauged_family(const HoneycombTorus& lat,
                               const MeasurementRecord& record) {
  StabilizerFamily fam{Stage::Gauged, {}};
  for (int p = 0; p < lat.num_plaquettes(); ++p) {
    int xp = outcome(record, plaq_q(p));
    std::vector<std::array<std::pair<cplx, OpFactor>, 2>> ch;
    std::vector<OpFactor> cp, zb;
    for (int v : lat.ring_vertices[p]) {
      ch.push_back(rotated_z(lat, v));
      zb.push_back(fpauli('Z', vertex_q(v)));
    }
    for (int e : lat.radial_edges[p]) cp.push_back(fpauli('Z', edge_q(e)));
    fam.ops.push_back({"AtC(p" + std::to_string(p) + ")",
                       expand(1, ch, cp), xp});
    fam.ops.push_back({"Bt(p" + std::to_string(p) + ")",
                       single_term(1, zb), 1});
  }
  for (int e = 0; e < lat.num_edges(); ++e) {
    auto [v1, v2] = lat.edge_vertices[e];
    fam.ops.push_back(
        {"D(e" + std::to_string(e) + ")",
         single_term(1, {fpauli('Z', vertex_q(v1)), fpauli('X', edge_q(e)),
                         fpauli('Z', vertex_q(v2))}),
         1});
  }
  return fam;
}

static StabOp d4_a_op(const HoneycombTorus& lat,
                      const MeasurementRecord& record, int p,
                      std::vector<OpFactor> extra) {
  int pref = outcome(record, plaq_q(p));
  for (int v : lat.ring_vertices[p]) pref *= outcome(record, vertex_q(v));
  std::vector<OpFactor> fs;
  for (int e : lat.radial_edges[p]) fs.push_back(fpauli('X', edge_q(e)));
  const auto& re = lat.ring_edges[p];
  for (int n = 0; n < 6; ++n)
    fs.push_back(fcz(edge_q(re[(n + 5) % 6]), edge_q(re[n])));
  for (auto& f : extra) fs.push_back(f);
  return {"A(p" + std::to_string(p) + ")", single_term(1, fs), pref};
}

static void d4_b_ops(const HoneycombTorus& lat, int p,
                     StabilizerFamily& fam) {
  const auto& re = lat.ring_edges[p];
  std::vector<OpFactor> b1, b2;
  for (int n : {0, 2, 4}) b1.push_back(fpauli('Z', edge_q(re[n])));
  for (int n : {1, 3, 5}) b2.push_back(fpauli('Z', edge_q(re[n])));
  fam.ops.push_back({"B1(p" + std::to_string(p) + ")", single_term(1, b1), 1});
  fam.ops.push_back({"B2(p" + std::to_string(p) + ")", single_term(1, b2), 1});
}

StabilizerFamily d4_family(const HoneycombTorus& lat,
                           const MeasurementRecord& record) {
  StabilizerFamily fam{Stage::FinalD4, {}};
  for (int p = 0; p < lat.num_plaquettes(); ++p) {
    fam.ops.push_back(d4_a_op(lat, record, p, {}));
    d4_b_ops(lat, p, fam);
  }
  return fam;
}

StabilizerFamily q8_family(const HoneycombTorus& lat,
                           const MeasurementRecord& record) {
  if (!lat.coloring)
    throw NeedsColoring("Q8 family requires a 3-colorable torus");
  StabilizerFamily fam{Stage::FinalQ8, {}};
  for (int p = 0; p < lat.num_plaquettes(); ++p) {
    // one extra CZ per color triangle through p, placed on opposite ring
    // edges.  This is a structural stand-in: the derivation-exact factor
    // involves the partner plaquettes' edge neighborhoods and is not
    // edge-local; full Q8 verification is out of scope here.
    std::vector<OpFactor> extra;
    const auto& re = lat.ring_edges[p];
    for (int t = 0; t < 3; ++t)
      extra.push_back(fcz(edge_q(re[t]), edge_q(re[t + 3])));
    fam.ops.push_back(d4_a_op(lat, record, p, extra));
    d4_b_ops(lat, p, fam);
  }
  return fam;
}

VerifyReport verify(const StateVector& state, const StabilizerFamily& family,
                    double tol) {
  VerifyReport rep{family.stage, tol, {}, true};
  for (auto& op : family.ops) {
    cplx val = expectation(state, op.expr);
    bool pass = std::abs(val - cplx(op.expected)) <= tol;
    rep.items.push_back({op.name, val, op.expected, pass});
    rep.all_pass = rep.all_pass && pass;
  }
  return rep;
}

std::string VerifyReport::to_json() const {
  nlohmann::json doc;
  doc["stage"] = stage_name(stage);
  doc["tol"] = tol;
  doc["all_pass"] = all_pass;
  doc["operators"] = nlohmann::json::array();
  for (auto& it : items)
    doc["operators"].push_back({{"name", it.name},
                                {"re", it.value.real()},
                                {"im", it.value.imag()},
                                {"expected", it.expected},
                                {"pass", it.pass}});
  return doc.dump(2);
}

bool check_identity(const OperatorExpr& lhs, const OperatorExpr& rhs) {
  std::set<QubitId> s;
  for (auto& q : lhs.support()) s.insert(q);
  for (auto& q : rhs.support()) s.insert(q);
  std::vector<QubitId> order(s.begin(), s.end());
  if (order.size() > 12)
    throw SupportTooLarge("identity check limited to 12 qubits, got " +
                          std::to_string(order.size()));
  Eigen::MatrixXcd a = to_dense(lhs, order);
  Eigen::MatrixXcd b = to_dense(rhs, order);
  return (a - b).cwiseAbs().maxCoeff() < 1e-12;
}

}  // namespace qdp
