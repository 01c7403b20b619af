#pragma once

#include <cstdint>
#include <vector>

#include "steerkit/gf2.hpp"
#include "steerkit/pauli.hpp"

namespace steerkit::cph {

inline constexpr std::size_t kDefaultEnumerationCap = 24;

struct Term {
  pauli::PauliOp op;  // Hermitian, sign folded into the phase
  double coeff = 1.0;
};

// Sum of mutually commuting signed Pauli strings with relation data.
// C_H is kept in reduced row-echelon form; its pivot columns play the role of the
// leading block after the column permutation recorded in `order`.
class CommutingHamiltonian {
public:
  static CommutingHamiltonian build(const std::vector<Term> &terms);
  static CommutingHamiltonian build(const std::vector<pauli::PauliOp> &terms);

  std::size_t n() const { return n_; }
  std::size_t num_terms() const { return terms_.size(); }
  std::size_t num_relations() const { return c_h_.rows(); }
  std::size_t num_generators() const { return num_terms() - num_relations(); }
  const std::vector<pauli::PauliOp> &terms() const { return terms_; }
  const pauli::PauliOp &term(std::size_t i) const { return terms_[i]; }
  const std::vector<double> &coeffs() const { return coeffs_; }

  const gf2::BitMatrix &term_matrix() const { return m_p_; }  // N x 2n
  const gf2::BitMatrix &C_H() const { return c_h_; }          // d_r x N
  const gf2::BitVector &p_ph() const { return p_ph_; }        // d_r
  const gf2::BitMatrix &A0() const { return a0_; }            // (N-d_r) x N
  const gf2::BitMatrix &B0() const { return b0_; }            // d_r x N
  const gf2::BitMatrix &D_H() const { return d_h_; }          // (N-d_r) x N
  // term order with relation pivots first, then the independent generators
  const std::vector<std::size_t> &order() const { return order_; }
  const std::vector<std::size_t> &pivots() const { return pivots_; }
  const std::vector<std::size_t> &generators() const { return generators_; }

  // multiplicity of every joint eigenspace, as a power of two
  std::size_t log2_multiplicity() const { return n_ - num_generators(); }
  bool feasible(const gf2::BitVector &v) const;
  double energy(const gf2::BitVector &v) const;
  // a fixed solution of C_H v = p_ph (free bits zero)
  gf2::BitVector particular_solution() const;
  // product of terms selected by c, including its phase
  pauli::PauliOp product(const gf2::BitVector &c) const;
  // interaction range: largest term support diameter (qubit index span) + 1
  std::size_t interaction_range() const;

  Matrix materialize(std::size_t cap = pauli::kDefaultMaterializeCap) const;

private:
  std::size_t n_ = 0;
  std::vector<pauli::PauliOp> terms_;
  std::vector<double> coeffs_;
  gf2::BitMatrix m_p_, c_h_, a0_, b0_, d_h_;
  gf2::BitVector p_ph_;
  std::vector<std::size_t> order_, pivots_, generators_;
};

struct SpectrumEntry {
  gf2::BitVector v;
  double energy = 0;
  std::uint64_t multiplicity = 0;
};

struct Level {
  double energy = 0;
  std::uint64_t multiplicity = 0;
};

// all 2^{N-d_r} feasible energy vectors in Gray-code order
std::vector<SpectrumEntry> enumerate_spectrum(const CommutingHamiltonian &h,
                                              std::size_t cap = kDefaultEnumerationCap);
// energies merged within tol, ascending
std::vector<Level> merge_levels(const std::vector<SpectrumEntry> &spectrum, double tol = 1e-9);

struct SearchResult {
  gf2::BitVector best;
  double energy = 0;
  bool exact = false;
  std::uint64_t evaluated = 0;
};

SearchResult ground_energy_search(const CommutingHamiltonian &h, std::uint64_t budget,
                                  std::uint64_t seed, std::size_t exhaustive_cap = 22);

// all ground energy vectors; requires exhaustive enumeration
std::vector<gf2::BitVector> ground_vectors(const CommutingHamiltonian &h, double tol = 1e-9);

Matrix eigenspace_projector(const CommutingHamiltonian &h, const gf2::BitVector &v,
                            std::size_t cap = pauli::kDefaultMaterializeCap);
Matrix ground_projector(const CommutingHamiltonian &h, double tol = 1e-9);

// random mutually commuting terms; some are products of earlier ones so relations occur
std::vector<Term> random_commuting_terms(std::size_t n, std::size_t num_terms, std::uint64_t seed,
                                         bool random_coeffs = true);

}  // namespace steerkit::cph
