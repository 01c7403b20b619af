#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "steerkit/gf2.hpp"

namespace steerkit {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

namespace pauli {

inline constexpr std::size_t kDefaultMaterializeCap = 14;

// i^phase * (tensor over k of sigma(x_k, z_k)) with sigma(1,1) = Y.
// Qubit 0 is the leftmost tensor factor, i.e. the most significant bit of a basis index.
class PauliOp {
public:
  PauliOp() = default;
  explicit PauliOp(std::size_t n) : x_(n), z_(n), n_(n) {}
  PauliOp(gf2::BitVector x, gf2::BitVector z, int phase);

  // "+XYZ", "-ZZI", "iX", "-iY"; letters from {I,X,Y,Z}
  static PauliOp from_string(const std::string &s);
  static PauliOp single(std::size_t n, std::size_t qubit, char letter);
  // symplectic vector (x_0..x_{n-1} | z_0..z_{n-1})
  static PauliOp from_symplectic(const gf2::BitVector &v, int phase = 0);

  std::size_t n() const { return n_; }
  const gf2::BitVector &x() const { return x_; }
  const gf2::BitVector &z() const { return z_; }
  int phase() const { return phase_; }
  void set_phase(int p) { phase_ = ((p % 4) + 4) % 4; }

  char letter(std::size_t k) const;
  std::string to_string() const;
  gf2::BitVector symplectic() const;
  std::vector<std::size_t> support() const;
  std::size_t weight() const { return support().size(); }
  bool is_identity() const { return x_.is_zero() && z_.is_zero(); }
  bool is_hermitian() const { return phase_ % 2 == 0; }
  // sign of a Hermitian operator: +1 or -1
  int sign() const;
  PauliOp negated() const;
  PauliOp adjoint() const;

  // P|b> = coeff |b'>
  std::pair<std::uint64_t, cplx> act(std::uint64_t b) const;
  std::uint64_t x_mask() const { return xmask_; }
  std::uint64_t z_mask() const { return zmask_; }
  int y_count() const { return ycount_; }

  bool operator==(const PauliOp &o) const {
    return n_ == o.n_ && phase_ == o.phase_ && x_ == o.x_ && z_ == o.z_;
  }
  bool operator!=(const PauliOp &o) const { return !(*this == o); }

private:
  void refresh_masks();

  gf2::BitVector x_, z_;
  std::size_t n_ = 0;
  int phase_ = 0;
  std::uint64_t xmask_ = 0, zmask_ = 0;
  int ycount_ = 0;
};

PauliOp multiply(const PauliOp &p, const PauliOp &q);
inline PauliOp operator*(const PauliOp &p, const PauliOp &q) { return multiply(p, q); }

bool symplectic_pairing(const PauliOp &p, const PauliOp &q);
bool commutes(const PauliOp &p, const PauliOp &q);

// 2n x 2n block matrix [[0, 1], [1, 0]]
gf2::BitMatrix symplectic_form(std::size_t n);

Matrix materialize(const PauliOp &p, std::size_t cap = kDefaultMaterializeCap);

// left / right multiplication of a dense matrix by a Pauli, O(dim^2)
Matrix left_apply(const PauliOp &p, const Matrix &m);
Matrix right_apply(const Matrix &m, const PauliOp &p);
Vector apply(const PauliOp &p, const Vector &v);
cplx expectation(const PauliOp &p, const Matrix &rho);

}  // namespace pauli
}  // namespace steerkit
