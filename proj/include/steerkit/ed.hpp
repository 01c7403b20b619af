#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include <Eigen/Dense>

#include "steerkit/pauli.hpp"

namespace steerkit::ed {

inline constexpr Eigen::Index kDenseCap = 20000;

struct Eigensystem {
  Eigen::VectorXd values;  // ascending
  Matrix vectors;          // columns; empty when only values were requested
};

// Hermitian eigensolver (LAPACK zheevd). Faults above `cap` with an advisory.
Eigensystem eigh(const Matrix &h, bool want_vectors = true, Eigen::Index cap = kDenseCap);

// Labelled basis. For spins `states` is empty and the basis is the full tensor
// product with site 0 as the most significant digit. For fermions the codes are
// occupation bitmasks with mode k stored at bit (modes - 1 - k), sorted ascending.
struct Basis {
  std::size_t sites = 0;
  std::size_t local_dim = 2;
  bool fermionic = false;
  std::vector<std::uint64_t> states;
  std::string sector;  // human-readable sector label, empty when unrestricted
  // fixed-number species as (mode count, particle count), modes laid out consecutively;
  // empty unless the basis is a product of such sectors
  std::vector<std::pair<std::size_t, std::size_t>> species;

  std::size_t dim() const;
  std::uint64_t code(std::size_t index) const { return states.empty() ? index : states[index]; }
  // index of a code, or nullopt if the code lies outside the basis
  std::optional<std::size_t> index_of(std::uint64_t code) const;
  static Basis spins(std::size_t sites, std::size_t local_dim);

private:
  mutable std::unordered_map<std::uint64_t, std::size_t> lookup_;
};

struct DenseHamiltonian {
  Matrix matrix;
  Basis basis;
  std::string label;

  Eigen::Index dim() const { return matrix.rows(); }
  double hermiticity_error() const { return (matrix - matrix.adjoint()).norm(); }
};

// sum of weighted Pauli strings on the full qubit basis
DenseHamiltonian from_paulis(const std::vector<pauli::PauliOp> &ops, const std::vector<double> &coeffs,
                             std::size_t cap = pauli::kDefaultMaterializeCap);

using MatVec = std::function<Vector(const Vector &)>;

// lowest k eigenpairs of a Hermitian operator given only as a product, via
// Lanczos with full reorthogonalization and locking of converged vectors
Eigensystem lanczos_lowest(const MatVec &op, Eigen::Index dim, std::size_t k, std::uint64_t seed = 1,
                           double tol = 1e-10, std::size_t krylov = 200);

// full spectrum when k == 0, otherwise the lowest k pairs (iterative above the dense cap)
Eigensystem diagonalize(const DenseHamiltonian &h, std::size_t k = 0, Eigen::Index cap = kDenseCap);

struct GroundManifold {
  double energy = 0;
  double gap = 0;
  Matrix states;  // orthonormal columns
  std::size_t degeneracy = 0;
  double tol = 0;
};

// tol < 0 selects the relative default 1e-7 * max|eigenvalue|
GroundManifold ground_manifold(const Eigensystem &es, double tol = -1);
double default_tolerance(const Eigen::VectorXd &values);

// spin-s matrices (hbar = 1) in the basis m = s, s-1, ..., -s
struct SpinMatrices {
  Matrix sx, sy, sz;
};
SpinMatrices spin_matrices(double s);
std::size_t spin_dimension(double s);

// operator `op` (dimension d^|sites|) acting on the listed sites of an N-site tensor product
Matrix embed(const Matrix &op, const std::vector<std::size_t> &sites, std::size_t num_sites,
             std::size_t local_dim);

}  // namespace steerkit::ed
