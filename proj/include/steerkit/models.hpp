#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "steerkit/cph.hpp"
#include "steerkit/ed.hpp"
#include "steerkit/fermion.hpp"

namespace steerkit::models {

enum class Boundary { periodic, open };
enum class Kind { ising_chain, heisenberg_chain, syk_dirac, syk_majorana, fermi_hubbard, commuting_pauli_custom };

std::string to_string(Kind k);
Kind kind_from_string(const std::string &s);
Boundary boundary_from_string(const std::string &s);

// Ising chain sum_i sign * s_i s_{i+1} with s the Pauli matrix along `axis`;
// sign = +1 is antiferromagnetic, -1 ferromagnetic
cph::CommutingHamiltonian build_ising(std::size_t n, int sign, Boundary boundary = Boundary::periodic,
                                      char axis = 'Z');

// sum_i S_i . S_{i+1} for spin s
ed::DenseHamiltonian build_heisenberg(std::size_t n, double s, Boundary boundary = Boundary::periodic);
// total spin components on the chain, for symmetry checks
std::array<Matrix, 3> total_spin(std::size_t n, double s);

// (2N)^{-3/2} sum_{ijkl} J_{ij;kl} c_i^dag c_j^dag c_k c_l - mu sum_i n_i
struct DiracSyk {
  std::size_t modes = 0;
  double mu = 0;
  // independent couplings for i<j, k<l, with J_{ij;kl} = conj(J_{kl;ij})
  std::vector<std::array<std::size_t, 4>> index;
  std::vector<cplx> coupling;
  fermion::Operator op;
};
DiracSyk build_syk_dirac(std::size_t n, double mu, std::uint64_t seed, double variance = 1.0);

// N^{-3/2} sum_{ijkl} J_{ijkl} g_i g_j g_k g_l over 2N Majoranas, J fully antisymmetric.
// Majorana 2j is -i(c_j - c_j^dag) and 2j+1 is c_j + c_j^dag (0-based j).
struct MajoranaSyk {
  std::size_t modes = 0;  // Dirac modes; 2 * modes Majoranas
  std::vector<std::array<std::size_t, 4>> index;  // i<j<k<l
  std::vector<double> coupling;
  std::vector<pauli::PauliOp> paulis;  // Jordan-Wigner image of each quadruple product
  std::vector<double> weights;         // prefactor-scaled real weights of `paulis`
  ed::DenseHamiltonian dense() const;
  fermion::Operator to_fermions() const;
};
MajoranaSyk build_syk_majorana(std::size_t n, std::uint64_t seed, double variance = 1.0);
// Jordan-Wigner image of Majorana a on `modes` qubits
pauli::PauliOp majorana_pauli(std::size_t modes, std::size_t a);

// -t sum_<ij>,s (c_is^dag c_js + h.c.) + U sum_i n_i,up n_i,down on an Lx x Ly lattice.
// Modes: site x + Lx y for spin up, plus Lx Ly for spin down. A bond that appears twice
// under periodic wrapping (length-2 direction) is counted once.
fermion::Operator build_fermi_hubbard(std::size_t lx, std::size_t ly, double t, double u,
                                      Boundary boundary = Boundary::periodic);
std::vector<std::pair<std::size_t, std::size_t>> lattice_bonds(std::size_t lx, std::size_t ly,
                                                               Boundary boundary);
// total number operator on a mode subset
fermion::Operator number_operator(std::size_t modes, std::size_t first, std::size_t count);

cph::CommutingHamiltonian build_commuting(const std::vector<cph::Term> &terms);

struct ModelSpec {
  Kind kind = Kind::ising_chain;
  std::size_t n = 3;  // spins, Dirac modes or qubits
  int sign = 1;
  char axis = 'Z';
  double spin = 0.5;
  Boundary boundary = Boundary::periodic;
  double mu = 0;
  double variance = 1;
  std::uint64_t seed = 0;
  std::size_t lx = 3, ly = 3;
  double t = 1, u = 4;
  std::optional<std::size_t> n_up, n_down, particles;
  std::vector<cph::Term> terms;

  // faults with the offending field name
  void validate() const;
  bool commuting_pauli() const { return kind == Kind::ising_chain || kind == Kind::commuting_pauli_custom; }
};

}  // namespace steerkit::models
