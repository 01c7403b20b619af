#include "steerkit/ed.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace steerkit::ed {

std::size_t Basis::dim() const {
  if (!states.empty()) return states.size();
  std::size_t d = 1;
  for (std::size_t k = 0; k < sites; ++k) d *= local_dim;
  return d;
}

std::optional<std::size_t> Basis::index_of(std::uint64_t code) const {
  if (states.empty()) {
    if (code < dim()) return std::size_t(code);
    return std::nullopt;
  }
  if (lookup_.empty()) {
    lookup_.reserve(states.size());
    for (std::size_t i = 0; i < states.size(); ++i) lookup_.emplace(states[i], i);
  }
  auto it = lookup_.find(code);
  if (it == lookup_.end()) return std::nullopt;
  return it->second;
}

Basis Basis::spins(std::size_t sites, std::size_t local_dim) {
  Basis b;
  b.sites = sites;
  b.local_dim = local_dim;
  return b;
}

DenseHamiltonian from_paulis(const std::vector<pauli::PauliOp> &ops, const std::vector<double> &coeffs,
                             std::size_t cap) {
  if (ops.size() != coeffs.size()) throw std::invalid_argument("from_paulis: size mismatch");
  if (ops.empty()) throw std::invalid_argument("from_paulis: no terms");
  const std::size_t n = ops[0].n();
  if (n > cap) throw std::invalid_argument("from_paulis: qubit count exceeds materialization cap");
  const std::uint64_t dim = 1ULL << n;
  DenseHamiltonian h;
  h.basis = Basis::spins(n, 2);
  h.matrix = Matrix::Zero(dim, dim);
  for (std::size_t t = 0; t < ops.size(); ++t) {
    if (ops[t].n() != n) throw std::invalid_argument("from_paulis: inconsistent qubit counts");
    for (std::uint64_t b = 0; b < dim; ++b) {
      auto [b2, c] = ops[t].act(b);
      h.matrix(b2, b) += coeffs[t] * c;
    }
  }
  return h;
}

Eigensystem diagonalize(const DenseHamiltonian &h, std::size_t k, Eigen::Index cap) {
  if (k == 0 || h.dim() <= cap) {
    Eigensystem es = eigh(h.matrix, true, cap);
    if (k > 0 && Eigen::Index(k) < es.values.size()) {
      es.values.conservativeResize(k);
      es.vectors.conservativeResize(Eigen::NoChange, k);
    }
    return es;
  }
  const Matrix &m = h.matrix;
  return lanczos_lowest([&m](const Vector &v) { return Vector(m * v); }, h.dim(), k);
}

double default_tolerance(const Eigen::VectorXd &values) {
  double scale = values.size() ? values.cwiseAbs().maxCoeff() : 0.0;
  return 1e-7 * std::max(scale, 1.0);
}

GroundManifold ground_manifold(const Eigensystem &es, double tol) {
  if (es.values.size() == 0) throw std::invalid_argument("ground_manifold: empty spectrum");
  if (tol < 0) tol = default_tolerance(es.values);
  GroundManifold gm;
  gm.tol = tol;
  gm.energy = es.values(0);
  Eigen::Index d = 0;
  while (d < es.values.size() && es.values(d) <= gm.energy + tol) ++d;
  if (d == es.values.size()) {
    throw std::invalid_argument(
        "ground_manifold: every computed eigenvalue is degenerate within tol; request more eigenpairs");
  }
  gm.degeneracy = std::size_t(d);
  gm.gap = es.values(d) - gm.energy;
  if (es.vectors.size()) gm.states = es.vectors.leftCols(d);
  return gm;
}

std::size_t spin_dimension(double s) {
  double d = 2 * s + 1;
  if (s < 0 || std::abs(d - std::round(d)) > 1e-12)
    throw std::invalid_argument("spin must be a non-negative half-integer");
  return std::size_t(std::llround(d));
}

SpinMatrices spin_matrices(double s) {
  const std::size_t d = spin_dimension(s);
  SpinMatrices out{Matrix::Zero(d, d), Matrix::Zero(d, d), Matrix::Zero(d, d)};
  Matrix splus = Matrix::Zero(d, d);
  for (std::size_t a = 0; a < d; ++a) {
    double m = s - double(a);
    out.sz(a, a) = m;
    if (a > 0) splus(a - 1, a) = std::sqrt(s * (s + 1) - m * (m + 1));  // S+|m> -> |m+1>
  }
  Matrix sminus = splus.adjoint();
  out.sx = 0.5 * (splus + sminus);
  out.sy = cplx(0, -0.5) * (splus - sminus);
  return out;
}

Matrix embed(const Matrix &op, const std::vector<std::size_t> &sites, std::size_t num_sites,
             std::size_t local_dim) {
  const std::size_t k = sites.size();
  std::size_t sub = 1, dim = 1;
  for (std::size_t i = 0; i < k; ++i) sub *= local_dim;
  for (std::size_t i = 0; i < num_sites; ++i) dim *= local_dim;
  if (std::size_t(op.rows()) != sub) throw std::invalid_argument("embed: operator dimension mismatch");
  std::vector<std::size_t> stride(num_sites);
  for (std::size_t i = 0, st = 1; i < num_sites; ++i, st *= local_dim) stride[num_sites - 1 - i] = st;
  Matrix out = Matrix::Zero(dim, dim);
  for (std::size_t b = 0; b < dim; ++b) {
    std::size_t local = 0, rest = b;
    for (std::size_t i = 0; i < k; ++i) {
      std::size_t digit = (b / stride[sites[i]]) % local_dim;
      local = local * local_dim + digit;
      rest -= digit * stride[sites[i]];
    }
    for (std::size_t l2 = 0; l2 < sub; ++l2) {
      cplx v = op(l2, local);
      if (v == cplx(0)) continue;
      std::size_t b2 = rest, tmp = l2;
      for (std::size_t i = k; i-- > 0;) {
        b2 += (tmp % local_dim) * stride[sites[i]];
        tmp /= local_dim;
      }
      out(b2, b) += v;
    }
  }
  return out;
}

}  // namespace steerkit::ed
