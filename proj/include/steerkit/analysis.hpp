#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "steerkit/cph.hpp"
#include "steerkit/ed.hpp"

namespace steerkit::analysis {

// RDM eigenvalues at or below this count as zero
inline constexpr double kSupportTol = 1e-10;

// Sites (spins) or modes (fermions) of a subsystem; the complement is implicit.
struct Region {
  std::vector<std::size_t> sites;

  std::size_t size() const { return sites.size(); }
  std::string label() const;  // "{0,1,2}"
  bool operator==(const Region &o) const { return sites == o.sites; }
};

// nonempty, sorted, unique, in range and strictly smaller than the system; faults otherwise
Region make_region(std::vector<std::size_t> sites, std::size_t num_sites);

// Split of a basis into region rows and complement columns. Fermionic bases carry the
// sign of moving the region modes in front of the complement modes.
class Bipartition {
public:
  Bipartition(const ed::Basis &basis, const Region &region);

  std::size_t region_dim() const { return region_dim_; }
  std::size_t complement_dim() const { return complement_dim_; }
  const Region &region() const { return region_; }
  std::size_t size() const { return row_.size(); }
  std::size_t row(std::size_t i) const { return row_[i]; }
  std::size_t col(std::size_t i) const { return col_[i]; }
  double sign(std::size_t i) const { return sign_[i]; }

  // psi -> matrix Psi with psi = sum Psi[r, c] |r>|c>
  Matrix reshape(const Vector &psi) const;
  // inverse of reshape; entries outside the basis must vanish
  Vector flatten(const Matrix &m) const;
  // rho -> Tr_complement rho
  Matrix trace_out_complement(const Matrix &rho) const;

private:
  Region region_;
  std::size_t region_dim_ = 0, complement_dim_ = 0;
  std::vector<std::size_t> row_, col_;
  std::vector<double> sign_;
};

struct ReducedState {
  Region region;
  Matrix matrix;
  Eigen::VectorXd eigenvalues;  // descending
  Matrix eigenvectors;          // columns matching `eigenvalues`
  std::size_t support_rank = 0;
  double smallest = 0;           // zeros included
  double smallest_nonzero = 0;   // above kSupportTol

  double trace() const { return matrix.trace().real(); }
};

ReducedState reduce(const Region &region, const Matrix &rdm);
// RDM on `keep` of a pure state
ReducedState partial_trace(const Vector &psi, const ed::Basis &basis, const Region &keep);
// RDM on `keep` of a density matrix
ReducedState partial_trace_mixed(const Matrix &rho, const ed::Basis &basis, const Region &keep);
// singular values of the reshaped state, descending
Eigen::VectorXd schmidt_coefficients(const Vector &psi, const ed::Basis &basis, const Region &region);

// Ground states of a commuting Pauli Hamiltonian. Z-only models are read off the
// computational basis; others go through the dense ground projector.
ed::GroundManifold commuting_ground_manifold(const cph::CommutingHamiltonian &h, double tol = 1e-9);

struct SCQResult {
  Region region;
  Matrix projector;  // on the region
  std::size_t rank = 0;
  bool trivial = true;
  std::string subspace = "ground manifold";
};

// Support projector of the joint RDM of all columns of `states` on `region`, when it is
// rank deficient. Every single-state RDM is checked to satisfy Pi rho Pi = rho.
std::optional<SCQResult> find_trivial_scq(const Matrix &states, const ed::Basis &basis, const Region &region,
                                          double tol = kSupportTol);

struct InducedProjector {
  double eigenvalue = 0;
  Matrix projector;         // full space
  double comm_target = 0;   // ||[Pi_a, Pi]||
  double comm_h = 0;        // ||Pi [H, Pi_a] Pi||
  std::size_t reduced_rank = 0;  // rank of Pi Pi_a Pi
  bool trivial_in_target = false;  // Pi Pi_a Pi = Pi
  bool trivial_in_reduced = false;  // Pi' Pi_a Pi' = Pi', Pi' = Pi Pi_a Pi
};

struct SCQReport {
  double comm_target = 0;  // ||[A, Pi]||_F
  double comm_h = 0;       // ||Pi [H, A] Pi||_F
  bool conserved = false;  // both below tol
  bool trivial = false;    // Pi A Pi proportional to Pi
  bool degenerate = false;  // A proportional to the identity
  double value = 0;        // Tr(Pi A Pi) / Tr Pi
  std::vector<InducedProjector> induced;  // non-trivial candidates only
};

// Checks A against the target projector Pi and Hamiltonian H on the full space.
SCQReport verify_scq(const Matrix &a, const Matrix &h, const Matrix &pi_target, double tol = 1e-9);

enum class ParentVerdict { phff, larger_gs, no_scq };
std::string to_string(ParentVerdict v);

struct ParentReport {
  ParentVerdict verdict = ParentVerdict::no_scq;
  std::size_t max_range = 0;
  std::vector<SCQResult> scqs;
  std::size_t ground_dim = 0;      // zero-energy dimension of H_PH
  double projector_distance = 0;   // ||P_PH - P_GS||_F
  bool diagonal = false;           // every SCQ was diagonal in the product basis
  std::string method;              // "diagonal", "dense" or "lanczos"
};

// H_PH = sum over contiguous windows of size <= max_range of (1 - Pi_w). Spin bases only.
ParentReport build_parent_hamiltonian(const Matrix &states, const ed::Basis &basis, std::size_t max_range,
                                      bool periodic = true, double tol = 1e-8);
// smallest window range in [1, max_range] giving PHFF
std::optional<std::size_t> minimal_phff_range(const Matrix &states, const ed::Basis &basis,
                                              std::size_t max_range, bool periodic = true);

// contiguous windows of a chain, size `len`; periodic windows wrap around
std::vector<Region> windows(std::size_t num_sites, std::size_t len, bool periodic);
// all subsets of a given size, lexicographic
std::vector<Region> subsets(std::size_t num_sites, std::size_t size);

struct Distinguishability {
  bool distinguishable = true;
  bool vacuous = false;  // one-dimensional manifold
  double smallest_singular = 0;
  Matrix witness;  // d x d coefficients e_ij with sum e_ij Tr_S |psi_i><psi_j| = 0
};

// Linear independence of the d^2 operators Tr_S |psi_i><psi_j| on the complement of `traced`.
Distinguishability bipartite_distinguishable(const Matrix &states, const ed::Basis &basis, const Region &traced,
                                             double tol = 1e-9);

enum class Verdict { ffs, nffss, nffjs, nffjs_candidate, nffns, unknown };
std::string to_string(Verdict v);

struct ClassifyInput {
  ed::Basis basis;
  Matrix states;  // ground manifold, orthonormal columns
  double energy = 0;
  // smallest eigenvalue of each bare local term
  std::vector<double> term_minima;
  bool commuting_pauli = false;
  bool periodic = true;
  std::size_t locality_budget = 3;
  std::vector<Region> extra_regions;
  double tol = 1e-9;
};

struct RegionEvidence {
  Region region;
  double p = 0;  // smallest RDM eigenvalue minimized over the manifold
  bool trivial_scq = false;
  bool distinguishable = true;
};

struct ClassifyReport {
  Verdict verdict = Verdict::unknown;
  bool frustration_free = false;
  bool degenerate = false;           // condition I
  bool trivial_scq_exists = false;   // condition II
  bool indistinguishable = false;    // condition III
  std::optional<ParentReport> parent;
  std::vector<SCQResult> scqs;
  std::vector<RegionEvidence> regions;
  std::string reason;
};

ClassifyReport classify(const ClassifyInput &in);

// min over unit |psi> in span(states) of the smallest eigenvalue of its RDM on `region`
struct RegionMinimum {
  Region region;
  double value = 0;
  Vector coefficients;  // combination of the manifold columns
  Vector phi;           // region vector with <phi| rho |phi> = value
  std::size_t iterations = 0;
};
RegionMinimum minimize_smallest_eigenvalue(const Matrix &states, const ed::Basis &basis, const Region &region,
                                           std::uint64_t seed = 1, std::size_t starts = 8);

}  // namespace steerkit::analysis
