#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qdp/circuit.hpp"
#include "qdp/lattice.hpp"

namespace qdp {

using cplx = std::complex<double>;

enum class Precision { c64, c128 };

struct SimConfig {
  int cap = 26;                         // max live qubits
  Precision precision = Precision::c128;
};

// Exact statevector over the live qubits only.  Qubits are allocated lazily
// (each in |+>) and retired at X-measurement, which halves the array.  Bit
// positions follow allocation order; all public API speaks QubitId.
//
// With precision c64 amplitudes are rounded to float after every operation,
// reproducing single-precision arithmetic error while keeping one kernel
// implementation.
class StateVector {
 public:
  explicit StateVector(SimConfig cfg = {});

  int num_live() const { return static_cast<int>(bit_qubit_.size()); }
  bool is_live(QubitId q) const { return qubit_bit_.count(q) != 0; }
  const std::vector<QubitId>& live_qubits() const { return bit_qubit_; }
  int bit_of(QubitId q) const;       // throws DeadQubit
  const SimConfig& config() const { return cfg_; }

  double norm() const;
  cplx amplitude(uint64_t basis) const { return amp_[basis]; }
  const std::vector<cplx>& amplitudes() const { return amp_; }

  void allocate_plus(QubitId q);     // throws CapacityExceeded
  void apply_gate(const Gate& g);    // unitary kinds only; throws DeadQubit

  // X-basis measurement with collapse and retirement.  `forced` overrides the
  // Born sample; `u` in [0,1) decides the sampled branch.  Throws
  // ImpossibleOutcome if a forced branch has probability < 1e-12.
  int measure_x(QubitId q, std::optional<int> forced, double u);

  // Projective measurement of a Pauli product (no retirement).
  int measure_pauli(const std::string& pauli, const std::vector<QubitId>& sup,
                    std::optional<int> forced, double u);

  // probability of the +1 branch of an X measurement (no collapse)
  double prob_x_plus(QubitId q) const;

 private:
  friend cplx expectation(const StateVector&, const struct OperatorExpr&);
  friend Eigen::MatrixXcd reduced_density_matrix(const StateVector&,
                                                 const std::vector<QubitId>&);
  void quantize();
  void apply_pauli_char(char p, int bit);

  SimConfig cfg_;
  std::vector<cplx> amp_;
  std::map<QubitId, int> qubit_bit_;
  std::vector<QubitId> bit_qubit_;
};

// --- operator expressions --------------------------------------------------

struct OpFactor {
  enum Kind { Pauli, CZ, CCZ } kind;
  char pauli = 'I';                  // for Pauli
  std::vector<QubitId> qubits;       // 1, 2 or 3 entries
};

OpFactor fpauli(char p, QubitId q);
OpFactor fcz(QubitId a, QubitId b);
OpFactor fccz(QubitId a, QubitId b, QubitId c);

struct OpTerm {
  cplx scalar = 1.0;
  std::vector<OpFactor> factors;     // applied right-to-left, as written
};

struct OperatorExpr {
  std::vector<OpTerm> terms;
  std::vector<QubitId> support() const;
};

OperatorExpr single_term(cplx scalar, std::vector<OpFactor> factors);

// <psi|E|psi>; throws DeadQubit if support not live.
cplx expectation(const StateVector& state, const OperatorExpr& expr);

// Dense matrix of E on an explicit qubit ordering (qubit k -> bit k).
// Throws SupportTooLarge beyond 12 qubits.
Eigen::MatrixXcd to_dense(const OperatorExpr& expr,
                          const std::vector<QubitId>& order);
bool is_hermitian(const OperatorExpr& expr, double tol = 1e-9);

// rho over `region` (<= 14 qubits, else RegionTooLarge); Hermitian, trace 1.
Eigen::MatrixXcd reduced_density_matrix(const StateVector& state,
                                        const std::vector<QubitId>& region);

// --- circuit execution -----------------------------------------------------

struct RunResult {
  StateVector state;
  MeasurementRecord record;
  int peak_live = 0;
  // +1-branch probability of each measurement, at the time it fired
  std::map<QubitId, double> prob_plus;
};

// Runs a circuit with lazy allocation and eager measurement/retirement:
// a qubit destined for X measurement is measured as soon as its last unitary
// has fired.  Blocks of consecutive CZ-only layers are regrouped around the
// qubit being retired so ancillas never pile up.  One RNG draw is reserved
// per measurement in circuit order, so the eager schedule cannot perturb
// sampling.  Deterministic given (circuit, policy).
//
// Pauli-product measurements (toric stars) are recorded under vertex_q(n)
// where n is the index of the MeasPauli gate in circuit order.
RunResult run(const Circuit& circuit, const OutcomePolicy& policy,
              SimConfig cfg = {});

// Binary state export: magic, version, precision, qubit map (JSON), then
// little-endian complex128 amplitudes.
void save_state(const StateVector& state, const std::string& path);

}  // namespace qdp
