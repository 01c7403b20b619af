#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "steerkit/ed.hpp"

namespace steerkit::fermion {

struct Ladder {
  std::size_t mode = 0;
  bool dagger = false;
};

// coeff * (product of ladder operators in written order)
struct Term {
  cplx coeff{1.0, 0.0};
  std::vector<Ladder> ops;
};

struct Operator {
  std::size_t modes = 0;
  std::vector<Term> terms;

  void add(cplx coeff, std::vector<Ladder> ops);
  Operator adjoint() const;
  // true when every term has as many creators as annihilators
  bool number_conserving() const;
};

inline Ladder cdag(std::size_t m) { return {m, true}; }
inline Ladder c(std::size_t m) { return {m, false}; }

// Occupation code convention: mode k sits at bit (modes - 1 - k), so mode 0 is the
// leftmost Jordan-Wigner qubit. Returns the new code and sign, or nullopt when the term
// annihilates the state.
std::optional<std::pair<std::uint64_t, double>> apply_term(const Term &t, std::uint64_t code,
                                                           std::size_t modes);

int occupation(std::uint64_t code, std::size_t modes, std::size_t mode);

ed::Basis fock_basis(std::size_t modes);
ed::Basis number_sector(std::size_t modes, std::size_t particles);
// two species: modes [0, per_species) spin up, [per_species, 2 per_species) spin down
ed::Basis species_sector(std::size_t per_species, std::size_t n_up, std::size_t n_down);
// even (parity 0) or odd (parity 1) total occupation
ed::Basis parity_sector(std::size_t modes, int parity);

// matrix of the operator on a basis; faults if the operator leaves the basis
ed::DenseHamiltonian to_dense(const Operator &op, const ed::Basis &basis);
// full 2^modes qubit representation
ed::DenseHamiltonian jordan_wigner(const Operator &op, std::size_t cap = pauli::kDefaultMaterializeCap);
// dense annihilation operator of one mode on the full qubit space
Matrix annihilation_matrix(std::size_t modes, std::size_t mode);

// Restrict a full-basis matrix to a sector; faults when the sector is not invariant.
ed::DenseHamiltonian restrict_sector(const ed::DenseHamiltonian &full, const ed::Basis &sector,
                                     double tol = 1e-10);

// sparse product of the operator with a state on an invariant basis
Vector apply(const Operator &op, const ed::Basis &basis, const Vector &v);

// Abelian group of mode permutations with one character table row per momentum label.
struct SymmetryGroup {
  std::vector<std::vector<std::size_t>> perms;  // perms[g][mode] = image mode
  std::vector<std::vector<cplx>> characters;    // characters[k][g]
  std::vector<std::string> labels;              // one per k
};

// translations of an Lx x Ly periodic lattice with `species` copies of each site;
// site (x, y) has index x + Lx y and mode index site + species_index * Lx Ly
SymmetryGroup lattice_translations(std::size_t lx, std::size_t ly, std::size_t species);

// image code and fermionic reordering sign of a mode permutation
std::pair<std::uint64_t, double> permute(const std::vector<std::size_t> &perm, std::uint64_t code,
                                         std::size_t modes);

struct SymmetryBlock {
  std::size_t k = 0;
  std::string label;
  Matrix h;                      // block of the operator in the symmetry-adapted basis
  std::vector<long> column;      // per sector index: block column, or -1
  std::vector<cplx> amplitude;   // per sector index: amplitude in that column's vector
  std::size_t dim() const { return std::size_t(h.rows()); }
  Vector embed(const Vector &u) const;  // block vector -> sector vector
};

std::vector<SymmetryBlock> symmetry_blocks(const Operator &op, const ed::Basis &sector,
                                           const SymmetryGroup &group);

// c_a -> sum_i conj(U_ia) c_i, c_a^dag -> sum_i U_ia c_i^dag; U must be unitary
Operator mode_transform(const Operator &op, const Matrix &u, double drop = 1e-14);
// the same single-particle transformation acting on a state of a number or species sector
Vector mode_transform(const Vector &psi, const ed::Basis &basis, const Matrix &u);

}  // namespace steerkit::fermion
