#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "steerkit/cph.hpp"
#include "steerkit/gf2.hpp"
#include "steerkit/pauli.hpp"

namespace steerkit::steering {

// anticommutation pattern of `v` against every term: bit i set when {v, H^(i)} = 0
gf2::BitVector pattern_of(const cph::CommutingHamiltonian &h, const pauli::PauliOp &v);

struct FlipOperator {
  pauli::PauliOp v;
  std::size_t support = 0;
  bool within_budget = true;  // false is an advisory, not a fault
};

// Pauli V with VH^(i)V = (-1)^{g_i} H^(i). Faults when C_H g != 0.
// Minimal support is searched exhaustively over the commutant when it is small,
// greedily otherwise; ties prefer fewer Z/Y letters.
FlipOperator construct_flip_operator(const cph::CommutingHamiltonian &h, const gf2::BitVector &g,
                                     std::size_t locality_budget);
// same, from coefficients e in the basis of A0 rows (g = e A0)
FlipOperator flip_from_coefficients(const cph::CommutingHamiltonian &h, const gf2::BitVector &e,
                                    std::size_t locality_budget);

// default locality budget: interaction range + 1
std::size_t default_budget(const cph::CommutingHamiltonian &h);

struct SteeringDescriptor {
  std::size_t j = 0;  // term index
  int sign = -1;      // +1 keeps the H^(j) = +1 subspace, -1 keeps H^(j) = -1
  gf2::BitVector e;   // length N - d_r
  gf2::BitVector g;   // e A0, length N
  pauli::PauliOp v;
  bool local = true;
};

SteeringDescriptor make_descriptor(const cph::CommutingHamiltonian &h, std::size_t j, int sign,
                                   const gf2::BitVector &e, std::size_t locality_budget = 0);

// Kraus operators on the qubits listed in `support` (ascending, qubit 0 most significant)
struct Superoperator {
  std::vector<Matrix> kraus;
  std::optional<SteeringDescriptor> descriptor;
  std::vector<std::size_t> support;
  std::size_t num_qubits = 0;

  // || sum K^dag K - 1 ||_F
  double cptp_error() const;
  // Kraus operators embedded on all qubits
  std::vector<Matrix> full_kraus() const;
};

inline constexpr double kCptpTol = 1e-12;

// Kraus pair {Pi_s, V Pi_{-s}} with Pi_s = (1 + s H^(j)) / 2
Superoperator make_superoperator(const cph::CommutingHamiltonian &h, const SteeringDescriptor &d);

// Schroedinger action on a full density matrix
Matrix apply(const Superoperator &s, const Matrix &rho);
// Heisenberg (adjoint) action on a full observable
Matrix adjoint(const Superoperator &s, const Matrix &obs);
// descriptor action using Pauli products on the full space, no Kraus materialization
Matrix apply_descriptor(const cph::CommutingHamiltonian &h, const SteeringDescriptor &d, const Matrix &rho);

// Symbolic Heisenberg-picture state. After q steps
//   A_C = M A0, B_C = B0 + P A0, p_dp = f A0,
// with M the ordered product of update factors 1 + a0^(j) e.
struct HeisenbergState {
  gf2::BitMatrix A, B, P, M;
  gf2::BitVector p_dp, f;
  std::size_t step = 0;

  bool collapsed() const { return A.is_zero(); }
};

HeisenbergState initial_state(const cph::CommutingHamiltonian &h);
HeisenbergState heisenberg_step(const cph::CommutingHamiltonian &h, const HeisenbergState &state,
                                const SteeringDescriptor &d);
// 1 + a0^(j) e
gf2::BitMatrix update_factor(const cph::CommutingHamiltonian &h, const SteeringDescriptor &d);
// p_ph B_C + p_dp; the local energies once A_C = 0
gf2::BitVector energy_vector(const cph::CommutingHamiltonian &h, const HeisenbergState &state);

enum class Mode { exact, symbolic };
std::string to_string(Mode m);
Mode mode_from_string(const std::string &s);

struct ProtocolOptions {
  std::uint64_t seed = 0;
  std::size_t max_steps = 10000;
  Mode mode = Mode::symbolic;
  std::optional<double> target_energy;
  // steps to keep running once the target energy is reached
  std::size_t steps_after_target = 0;
  std::size_t locality_budget = 0;  // 0 selects default_budget
  std::optional<Matrix> initial_rho;  // exact mode; random pure state when absent
  bool keep_states = false;           // exact mode: store every density matrix
};

struct StepRecord {
  std::size_t step = 0;
  int stage = 1;
  std::size_t j = 0;
  int sign = -1;
  bool accepted = true;
  std::size_t support = 0;
  bool fallback = false;
  std::optional<double> energy;          // symbolic, once A_C = 0
  std::optional<double> exact_energy;    // Tr(rho H), exact mode
  std::optional<double> gs_population;   // exact mode
  std::optional<double> trace_distance;  // to the previous state, exact mode
};

struct ProtocolReport {
  std::vector<StepRecord> steps;
  bool stage1_complete = false;
  std::size_t stage1_steps = 0;
  bool fallback_used = false;
  bool complete = false;  // false when max_steps ran out during stage 1
  std::string stop_reason;  // "max_steps" or "target_energy"
  gf2::BitVector final_v;
  double final_energy = 0;
  std::size_t nonlocal_steps = 0;
  HeisenbergState state;
  Matrix final_rho;
  std::vector<Matrix> states;  // when keep_states
};

ProtocolReport run_protocol(const cph::CommutingHamiltonian &h, const ProtocolOptions &opt);

// unitary on (ancilla, support) with the ancilla as the most significant qubit;
// <0|U|0> and <1|U|0> are the two Kraus operators of make_superoperator
Matrix clifford_dilation(const cph::CommutingHamiltonian &h, const SteeringDescriptor &d);
// Kraus operators recovered from a dilation with the ancilla prepared in |0>
std::vector<Matrix> dilation_kraus(const Matrix &u);

// Three-Kraus cooling map for a nearest-neighbour chain of same-letter terms aa:
// Pi, Pi V Q-, Pi V Q+ with Pi = (1 - H^(i))/2, V = b on the second qubit and
// Q = (1 -+ bb)/2, b the next letter after a. Respects the global b-parity.
Superoperator alternative_superoperator(const cph::CommutingHamiltonian &h, std::size_t i);

struct HeatingReport {
  pauli::PauliOp error;
  std::optional<SteeringDescriptor> correction;
  std::vector<double> before, after_error, after_correction;
  double max_deviation = 0;
  bool restored = false;
};

// steers to the ground manifold (exact mode), applies `error`, then the corrective
// superoperator, and compares every <H^(j)>
HeatingReport heating_recovery_check(const cph::CommutingHamiltonian &h, const pauli::PauliOp &error,
                                     std::uint64_t seed);

// 0.5 * || a - b ||_1 for Hermitian matrices
double trace_distance(const Matrix &a, const Matrix &b);

}  // namespace steerkit::steering
