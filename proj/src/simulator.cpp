#include "qdp/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <random>
#include <set>

#include <json.hpp>

namespace qdp {

namespace {
constexpr double kForcedTol = 1e-12;
const cplx kI{0.0, 1.0};
}  // namespace

StateVector::StateVector(SimConfig cfg) : cfg_(cfg), amp_{1.0} {}

int StateVector::bit_of(QubitId q) const {
  auto it = qubit_bit_.find(q);
  if (it == qubit_bit_.end())
    throw DeadQubit("qubit not live: " + qubit_name(q));
  return it->second;
}

double StateVector::norm() const {
  double s = 0;
  for (auto& a : amp_) s += std::norm(a);
  return std::sqrt(s);
}

void StateVector::quantize() {
  if (cfg_.precision != Precision::c64) return;
  for (auto& a : amp_)
    a = cplx(static_cast<float>(a.real()), static_cast<float>(a.imag()));
}

void StateVector::allocate_plus(QubitId q) {
  if (is_live(q)) throw Io("qubit already live: " + qubit_name(q));
  int k = num_live();
  if (k + 1 > cfg_.cap)
    throw CapacityExceeded("would need " + std::to_string(k + 1) +
                           " live qubits, cap is " + std::to_string(cfg_.cap));
  const double r = 1.0 / std::numbers::sqrt2;
  std::vector<cplx> next(amp_.size() * 2);
  for (size_t i = 0; i < amp_.size(); ++i)
    next[i] = next[i | (size_t{1} << k)] = amp_[i] * r;
  amp_ = std::move(next);
  qubit_bit_[q] = k;
  bit_qubit_.push_back(q);
  quantize();
}

void StateVector::apply_pauli_char(char p, int bit) {
  const size_t s = size_t{1} << bit;
  for (size_t i = 0; i < amp_.size(); ++i) {
    if (i & s) continue;
    cplx a = amp_[i], b = amp_[i | s];
    switch (p) {
      case 'X': amp_[i] = b; amp_[i | s] = a; break;
      case 'Y': amp_[i] = -kI * b; amp_[i | s] = kI * a; break;
      case 'Z': amp_[i | s] = -b; break;
      case 'I': break;
      default: throw Io(std::string("bad Pauli letter: ") + p);
    }
  }
}

void StateVector::apply_gate(const Gate& g) {
  for (auto& q : g.support) bit_of(q);  // DeadQubit check up front
  const double r = 1.0 / std::numbers::sqrt2;
  switch (g.kind) {
    case GateKind::H: {
      size_t s = size_t{1} << bit_of(g.support[0]);
      for (size_t i = 0; i < amp_.size(); ++i) {
        if (i & s) continue;
        cplx a = amp_[i], b = amp_[i | s];
        amp_[i] = (a + b) * r;
        amp_[i | s] = (a - b) * r;
      }
      break;
    }
    case GateKind::X:
    case GateKind::Y:
    case GateKind::Z:
      apply_pauli_char("XYZ"[static_cast<int>(g.kind) -
                             static_cast<int>(GateKind::X)],
                       bit_of(g.support[0]));
      break;
    case GateKind::S: {
      size_t s = size_t{1} << bit_of(g.support[0]);
      for (size_t i = 0; i < amp_.size(); ++i)
        if (i & s) amp_[i] *= kI;
      break;
    }
    case GateKind::Tplus:
    case GateKind::Tminus: {
      // exp(+-i pi/8 Z) = diag(e^{+-i pi/8}, e^{-+i pi/8})
      double th = std::numbers::pi / 8;
      if (g.kind == GateKind::Tminus) th = -th;
      cplx p0 = std::polar(1.0, th), p1 = std::polar(1.0, -th);
      size_t s = size_t{1} << bit_of(g.support[0]);
      for (size_t i = 0; i < amp_.size(); ++i) amp_[i] *= (i & s) ? p1 : p0;
      break;
    }
    case GateKind::CZ: {
      size_t m = (size_t{1} << bit_of(g.support[0])) |
                 (size_t{1} << bit_of(g.support[1]));
      for (size_t i = 0; i < amp_.size(); ++i)
        if ((i & m) == m) amp_[i] = -amp_[i];
      break;
    }
    case GateKind::CCZ: {
      size_t m = (size_t{1} << bit_of(g.support[0])) |
                 (size_t{1} << bit_of(g.support[1])) |
                 (size_t{1} << bit_of(g.support[2]));
      for (size_t i = 0; i < amp_.size(); ++i)
        if ((i & m) == m) amp_[i] = -amp_[i];
      break;
    }
    case GateKind::SWAP: {
      size_t sa = size_t{1} << bit_of(g.support[0]);
      size_t sb = size_t{1} << bit_of(g.support[1]);
      for (size_t i = 0; i < amp_.size(); ++i)
        if ((i & sa) && !(i & sb)) std::swap(amp_[i], amp_[(i ^ sa) | sb]);
      break;
    }
    case GateKind::MeasX:
    case GateKind::MeasPauli:
      throw Io("apply_gate cannot execute measurements");
  }
  quantize();
}

double StateVector::prob_x_plus(QubitId q) const {
  size_t s = size_t{1} << bit_of(q);
  double p = 0;
  for (size_t i = 0; i < amp_.size(); ++i) {
    if (i & s) continue;
    p += std::norm(amp_[i] + amp_[i | s]) * 0.5;
  }
  return p;
}

int StateVector::measure_x(QubitId q, std::optional<int> forced, double u) {
  int b = bit_of(q);
  double pp = prob_x_plus(q);
  int outcome;
  if (forced) {
    outcome = *forced;
    double pb = outcome > 0 ? pp : 1.0 - pp;
    if (pb < kForcedTol)
      throw ImpossibleOutcome("forced outcome " +
                              std::string(outcome > 0 ? "+1" : "-1") +
                              " on " + qubit_name(q) + " has probability " +
                              std::to_string(pb));
    outcome = outcome > 0 ? 1 : -1;
  } else {
    outcome = u < pp ? 1 : -1;
  }
  double pb = outcome > 0 ? pp : 1.0 - pp;
  double scale = 1.0 / std::sqrt(2.0 * pb);
  const size_t s = size_t{1} << b;
  const size_t low = s - 1;
  std::vector<cplx> next(amp_.size() / 2);
  for (size_t i = 0; i < next.size(); ++i) {
    size_t hi = (i & ~low) << 1;
    size_t i0 = hi | (i & low);
    next[i] = (outcome > 0 ? amp_[i0] + amp_[i0 | s]
                           : amp_[i0] - amp_[i0 | s]) *
              scale;
  }
  amp_ = std::move(next);
  bit_qubit_.erase(bit_qubit_.begin() + b);
  qubit_bit_.erase(q);
  for (auto& [qq, bb] : qubit_bit_)
    if (bb > b) --bb;
  quantize();
  return outcome;
}

int StateVector::measure_pauli(const std::string& pauli,
                               const std::vector<QubitId>& sup,
                               std::optional<int> forced, double u) {
  if (pauli.size() != sup.size())
    throw Io("pauli string length does not match support");
  // phi = P psi
  std::vector<cplx> saved = amp_;
  for (size_t n = 0; n < sup.size(); ++n)
    apply_pauli_char(pauli[n], bit_of(sup[n]));
  std::vector<cplx> phi = std::move(amp_);
  amp_ = std::move(saved);
  double pp = 0;
  for (size_t i = 0; i < amp_.size(); ++i)
    pp += std::norm(amp_[i] + phi[i]) * 0.25;
  int outcome;
  if (forced) {
    outcome = *forced > 0 ? 1 : -1;
    double pb = outcome > 0 ? pp : 1.0 - pp;
    if (pb < kForcedTol)
      throw ImpossibleOutcome("forced Pauli outcome has probability " +
                              std::to_string(pb));
  } else {
    outcome = u < pp ? 1 : -1;
  }
  double pb = outcome > 0 ? pp : 1.0 - pp;
  double scale = 0.5 / std::sqrt(pb);
  for (size_t i = 0; i < amp_.size(); ++i)
    amp_[i] = (outcome > 0 ? amp_[i] + phi[i] : amp_[i] - phi[i]) * scale;
  quantize();
  return outcome;
}

// --- operator expressions --------------------------------------------------

OpFactor fpauli(char p, QubitId q) { return {OpFactor::Pauli, p, {q}}; }
OpFactor fcz(QubitId a, QubitId b) { return {OpFactor::CZ, 'I', {a, b}}; }
OpFactor fccz(QubitId a, QubitId b, QubitId c) {
  return {OpFactor::CCZ, 'I', {a, b, c}};
}

OperatorExpr single_term(cplx scalar, std::vector<OpFactor> factors) {
  return {{OpTerm{scalar, std::move(factors)}}};
}

std::vector<QubitId> OperatorExpr::support() const {
  std::set<QubitId> s;
  for (auto& t : terms)
    for (auto& f : t.factors)
      for (auto& q : f.qubits) s.insert(q);
  return {s.begin(), s.end()};
}

static void apply_factor(StateVector& st, const OpFactor& f) {
  switch (f.kind) {
    case OpFactor::Pauli:
      switch (f.pauli) {
        case 'X': st.apply_gate(g1(GateKind::X, f.qubits[0])); break;
        case 'Y': st.apply_gate(g1(GateKind::Y, f.qubits[0])); break;
        case 'Z': st.apply_gate(g1(GateKind::Z, f.qubits[0])); break;
        case 'I': break;
        default: throw Io(std::string("bad Pauli letter: ") + f.pauli);
      }
      break;
    case OpFactor::CZ:
      st.apply_gate(gcz(f.qubits[0], f.qubits[1]));
      break;
    case OpFactor::CCZ:
      st.apply_gate(gccz(f.qubits[0], f.qubits[1], f.qubits[2]));
      break;
  }
}

cplx expectation(const StateVector& state, const OperatorExpr& expr) {
  for (auto& q : expr.support()) state.bit_of(q);
  cplx total = 0;
  for (auto& t : expr.terms) {
    StateVector work = state;
    for (auto it = t.factors.rbegin(); it != t.factors.rend(); ++it)
      apply_factor(work, *it);
    cplx ip = 0;
    for (size_t i = 0; i < state.amp_.size(); ++i)
      ip += std::conj(state.amp_[i]) * work.amp_[i];
    total += t.scalar * ip;
  }
  return total;
}

Eigen::MatrixXcd to_dense(const OperatorExpr& expr,
                          const std::vector<QubitId>& order) {
  if (order.size() > 12)
    throw SupportTooLarge("dense evaluation limited to 12 qubits, got " +
                          std::to_string(order.size()));
  std::map<QubitId, int> bit;
  for (size_t k = 0; k < order.size(); ++k) bit[order[k]] = (int)k;
  const size_t dim = size_t{1} << order.size();
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim, dim);
  for (auto& t : expr.terms) {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(dim, dim);
    // column c of the term = product applied to basis state |c>
    for (size_t c = 0; c < dim; ++c) {
      size_t idx = c;
      cplx ph = 1.0;
      bool zero = false;
      // diagonal/permutation factors suffice except Y which adds a phase
      for (auto it = t.factors.rbegin(); it != t.factors.rend(); ++it) {
        const OpFactor& f = *it;
        if (f.kind == OpFactor::Pauli) {
          size_t s = size_t{1} << bit.at(f.qubits[0]);
          switch (f.pauli) {
            case 'X': idx ^= s; break;
            case 'Y': ph *= (idx & s) ? -kI : kI; idx ^= s; break;
            case 'Z': if (idx & s) ph = -ph; break;
            default: break;
          }
        } else {
          size_t m2 = 0;
          for (auto& q : f.qubits) m2 |= size_t{1} << bit.at(q);
          if ((idx & m2) == m2) ph = -ph;
        }
      }
      if (!zero) m.col(c).setZero(), m(idx, c) = ph;
    }
    out += t.scalar * m;
  }
  return out;
}

bool is_hermitian(const OperatorExpr& expr, double tol) {
  auto sup = expr.support();
  Eigen::MatrixXcd m = to_dense(expr, sup);
  return (m - m.adjoint()).cwiseAbs().maxCoeff() < tol;
}

Eigen::MatrixXcd reduced_density_matrix(const StateVector& state,
                                        const std::vector<QubitId>& region) {
  if (region.size() > 14)
    throw RegionTooLarge("region limited to 14 qubits, got " +
                         std::to_string(region.size()));
  std::vector<int> rbits;
  for (auto& q : region) rbits.push_back(state.bit_of(q));
  const int k = state.num_live();
  const size_t rdim = size_t{1} << region.size();
  const size_t edim = size_t{1} << (k - (int)region.size());
  std::vector<int> ebits;
  {
    std::set<int> rset(rbits.begin(), rbits.end());
    if (rset.size() != rbits.size()) throw Io("duplicate qubit in region");
    for (int b = 0; b < k; ++b)
      if (!rset.count(b)) ebits.push_back(b);
  }
  Eigen::MatrixXcd a(edim, rdim);
  for (size_t i = 0; i < state.amp_.size(); ++i) {
    size_t r = 0, e = 0;
    for (size_t n = 0; n < rbits.size(); ++n)
      if (i & (size_t{1} << rbits[n])) r |= size_t{1} << n;
    for (size_t n = 0; n < ebits.size(); ++n)
      if (i & (size_t{1} << ebits[n])) e |= size_t{1} << n;
    a(e, r) = state.amp_[i];
  }
  // rho[r1][r2] = sum_e psi(r1,e) conj(psi(r2,e))
  return a.transpose() * a.conjugate();
}

// --- circuit execution -----------------------------------------------------

namespace {

struct GateRef {
  int layer, idx;
};

bool is_meas(GateKind k) {
  return k == GateKind::MeasX || k == GateKind::MeasPauli;
}

}  // namespace

RunResult run(const Circuit& circuit, const OutcomePolicy& policy,
              SimConfig cfg) {
  circuit.check_layer_disjointness();
  RunResult res{StateVector(cfg), {}, 0};
  StateVector& st = res.state;

  // one RNG draw per measurement, reserved in circuit order
  std::mt19937_64 rng(policy.seed);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  std::map<QubitId, double> draw_x;
  std::vector<double> draw_pauli;
  std::set<QubitId> measured;
  std::map<QubitId, int> remaining;  // unitary gates left per qubit
  for (auto& l : circuit.layers) {
    for (auto& g : l.gates) {
      if (g.kind == GateKind::MeasX) {
        measured.insert(g.support[0]);
        draw_x[g.support[0]] = uni(rng);
      } else if (g.kind == GateKind::MeasPauli) {
        draw_pauli.push_back(uni(rng));
      } else {
        for (auto& q : g.support) ++remaining[q];
      }
    }
  }

  auto ensure_live = [&](QubitId q) {
    if (!st.is_live(q)) {
      st.allocate_plus(q);
      res.peak_live = std::max(res.peak_live, st.num_live());
    }
  };
  auto forced_for = [&](QubitId q) -> std::optional<int> {
    switch (policy.kind) {
      case OutcomePolicy::AllPlus:
        return 1;
      case OutcomePolicy::Forced: {
        auto it = policy.forced.find(q);
        if (it == policy.forced.end())
          throw MissingOutcome("no forced outcome for " + qubit_name(q));
        return it->second;
      }
      default:
        return std::nullopt;
    }
  };
  auto eager_measure = [&](QubitId q) {
    // fires once the last unitary on q has been applied
    if (!measured.count(q) || !st.is_live(q)) return;
    auto it = remaining.find(q);
    if (it != remaining.end() && it->second > 0) return;
    res.prob_plus[q] = st.prob_x_plus(q);
    res.record[q] = st.measure_x(q, forced_for(q), draw_x.at(q));
  };
  auto apply_unitary = [&](const Gate& g) {
    for (auto& q : g.support) ensure_live(q);
    st.apply_gate(g);
    for (auto& q : g.support) {
      if (--remaining[q] == 0) eager_measure(q);
    }
  };

  int pauli_ctr = 0;
  for (size_t li = 0; li < circuit.layers.size(); ++li) {
    // fuse maximal runs of CZ-only layers and retire ancillas group-by-group:
    // gates are grouped around the measured qubit whose last unitary lies in
    // the block (the plaquette in the dice stage, the vertex in the edge
    // stage) so those ancillas never accumulate.
    size_t le = li;
    auto cz_only = [&](const Layer& l) {
      return !l.gates.empty() &&
             std::all_of(l.gates.begin(), l.gates.end(), [](const Gate& g) {
               return g.kind == GateKind::CZ;
             });
    };
    while (le < circuit.layers.size() && cz_only(circuit.layers[le])) ++le;
    if (le > li + 1) {
      // count, per qubit, the unitaries it still has after this block
      std::map<QubitId, int> after;
      for (size_t lj = le; lj < circuit.layers.size(); ++lj)
        for (auto& g : circuit.layers[lj].gates)
          if (!is_meas(g.kind))
            for (auto& q : g.support) ++after[q];
      std::map<QubitId, std::vector<Gate>> groups;
      std::vector<Gate> loose;
      for (size_t lj = li; lj < le; ++lj) {
        for (auto& g : circuit.layers[lj].gates) {
          std::vector<QubitId> keys;
          for (auto& q : g.support)
            if (measured.count(q) && after[q] == 0) keys.push_back(q);
          if (keys.size() == 1) groups[keys[0]].push_back(g);
          else loose.push_back(g);
        }
      }
      for (auto& g : loose) apply_unitary(g);
      for (auto& [q, gs] : groups)
        for (auto& g : gs) apply_unitary(g);
      li = le - 1;
      continue;
    }
    for (auto& g : circuit.layers[li].gates) {
      if (g.kind == GateKind::MeasX) {
        QubitId q = g.support[0];
        if (res.record.count(q)) continue;  // already retired eagerly
        ensure_live(q);                     // untouched qubit: measure |+>
        res.prob_plus[q] = st.prob_x_plus(q);
        res.record[q] = st.measure_x(q, forced_for(q), draw_x.at(q));
      } else if (g.kind == GateKind::MeasPauli) {
        for (auto& q : g.support) ensure_live(q);
        QubitId label = vertex_q(pauli_ctr);
        res.record[label] = st.measure_pauli(g.pauli, g.support,
                                             forced_for(label),
                                             draw_pauli[pauli_ctr]);
        ++pauli_ctr;
      } else {
        apply_unitary(g);
      }
    }
  }
  return res;
}

void save_state(const StateVector& state, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Io("cannot open for writing: " + path);
  nlohmann::json hdr;
  hdr["qubits"] = nlohmann::json::array();
  for (auto& q : state.live_qubits())
    hdr["qubits"].push_back({{"role", role_name(q.role)}, {"index", q.index}});
  std::string hs = hdr.dump();
  const char magic[8] = {'Q', 'D', 'P', 'S', 'T', 'A', 'T', 'E'};
  uint32_t version = 1;
  uint32_t prec = state.config().precision == Precision::c64 ? 64 : 128;
  uint64_t hlen = hs.size();
  uint64_t n = state.amplitudes().size();
  f.write(magic, 8);
  f.write(reinterpret_cast<const char*>(&version), 4);
  f.write(reinterpret_cast<const char*>(&prec), 4);
  f.write(reinterpret_cast<const char*>(&hlen), 8);
  f.write(hs.data(), (std::streamsize)hs.size());
  f.write(reinterpret_cast<const char*>(&n), 8);
  f.write(reinterpret_cast<const char*>(state.amplitudes().data()),
          (std::streamsize)(n * sizeof(cplx)));
  if (!f) throw Io("write failed: " + path);
}

}  // namespace qdp
