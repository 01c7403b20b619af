#include "steerkit/pauli.hpp"

#include <bit>
#include <sstream>
#include <stdexcept>

namespace steerkit::pauli {

namespace {

const cplx kIPow[4] = {cplx(1, 0), cplx(0, 1), cplx(-1, 0), cplx(0, -1)};

void check_same_size(const PauliOp &p, const PauliOp &q, const char *what) {
  if (p.n() != q.n()) {
    std::stringstream ss;
    ss << what << ": qubit count mismatch (" << p.n() << " vs " << q.n() << ")";
    throw std::invalid_argument(ss.str());
  }
}

// exponent of i picked up by sigma(x1,z1) sigma(x2,z2) = i^g sigma(x1^x2, z1^z2)
int g_exponent(bool x1, bool z1, bool x2, bool z2) {
  if (!x1 && !z1) return 0;
  if (x1 && z1) return int(z2) - int(x2);
  if (x1) return int(z2) * (2 * int(x2) - 1);
  return int(x2) * (1 - 2 * int(z2));
}

}  // namespace

PauliOp::PauliOp(gf2::BitVector x, gf2::BitVector z, int phase)
    : x_(std::move(x)), z_(std::move(z)), n_(x_.size()) {
  if (z_.size() != n_) throw std::invalid_argument("PauliOp: x and z lengths differ");
  set_phase(phase);
  refresh_masks();
}

void PauliOp::refresh_masks() {
  xmask_ = zmask_ = 0;
  ycount_ = 0;
  if (n_ > 64) return;
  for (std::size_t k = 0; k < n_; ++k) {
    std::uint64_t bit = 1ULL << (n_ - 1 - k);
    if (x_.get(k)) xmask_ |= bit;
    if (z_.get(k)) zmask_ |= bit;
    if (x_.get(k) && z_.get(k)) ++ycount_;
  }
}

PauliOp PauliOp::from_string(const std::string &s) {
  std::size_t pos = 0;
  int phase = 0;
  if (s.rfind("\xE2\x88\x92", 0) == 0) {  // unicode minus sign
    phase = 2;
    pos = 3;
  } else if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
    if (s[pos] == '-') phase = 2;
    ++pos;
  }
  if (pos < s.size() && s[pos] == 'i') {
    phase += 1;
    ++pos;
  }
  std::size_t n = s.size() - pos;
  if (n == 0) throw std::invalid_argument("empty Pauli string: '" + s + "'");
  gf2::BitVector x(n), z(n);
  for (std::size_t k = 0; k < n; ++k) {
    switch (s[pos + k]) {
      case 'I': case '_': break;
      case 'X': x.set(k, true); break;
      case 'Z': z.set(k, true); break;
      case 'Y': x.set(k, true); z.set(k, true); break;
      default: {
        std::stringstream ss;
        ss << "invalid Pauli character '" << s[pos + k] << "' in '" << s << "'";
        throw std::invalid_argument(ss.str());
      }
    }
  }
  return PauliOp(x, z, phase);
}

PauliOp PauliOp::single(std::size_t n, std::size_t qubit, char letter) {
  if (qubit >= n) throw std::invalid_argument("PauliOp::single: qubit out of range");
  std::string s(n, 'I');
  s[qubit] = letter;
  return from_string(s);
}

PauliOp PauliOp::from_symplectic(const gf2::BitVector &v, int phase) {
  if (v.size() % 2) throw std::invalid_argument("symplectic vector must have even length");
  std::size_t n = v.size() / 2;
  gf2::BitVector x(n), z(n);
  for (std::size_t k = 0; k < n; ++k) {
    x.set(k, v.get(k));
    z.set(k, v.get(n + k));
  }
  return PauliOp(x, z, phase);
}

char PauliOp::letter(std::size_t k) const {
  bool a = x_.get(k), b = z_.get(k);
  if (a && b) return 'Y';
  if (a) return 'X';
  if (b) return 'Z';
  return 'I';
}

std::string PauliOp::to_string() const {
  static const char *prefix[4] = {"+", "+i", "-", "-i"};
  std::string s = prefix[phase_];
  for (std::size_t k = 0; k < n_; ++k) s += letter(k);
  return s;
}

gf2::BitVector PauliOp::symplectic() const {
  gf2::BitVector v(2 * n_);
  for (std::size_t k = 0; k < n_; ++k) {
    v.set(k, x_.get(k));
    v.set(n_ + k, z_.get(k));
  }
  return v;
}

std::vector<std::size_t> PauliOp::support() const {
  std::vector<std::size_t> s;
  for (std::size_t k = 0; k < n_; ++k)
    if (x_.get(k) || z_.get(k)) s.push_back(k);
  return s;
}

int PauliOp::sign() const {
  if (!is_hermitian()) throw std::logic_error("sign() requested for non-Hermitian Pauli " + to_string());
  return phase_ == 0 ? 1 : -1;
}

PauliOp PauliOp::negated() const { return PauliOp(x_, z_, phase_ + 2); }

PauliOp PauliOp::adjoint() const { return PauliOp(x_, z_, 4 - phase_); }

std::pair<std::uint64_t, cplx> PauliOp::act(std::uint64_t b) const {
  int e = phase_ + ycount_ + 2 * (std::popcount(zmask_ & b) & 1);
  return {b ^ xmask_, kIPow[e & 3]};
}

PauliOp multiply(const PauliOp &p, const PauliOp &q) {
  check_same_size(p, q, "multiply");
  int e = p.phase() + q.phase();
  for (std::size_t k = 0; k < p.n(); ++k)
    e += g_exponent(p.x().get(k), p.z().get(k), q.x().get(k), q.z().get(k));
  return PauliOp(p.x() ^ q.x(), p.z() ^ q.z(), e);
}

bool symplectic_pairing(const PauliOp &p, const PauliOp &q) {
  check_same_size(p, q, "symplectic_pairing");
  return p.x().dot(q.z()) ^ p.z().dot(q.x());
}

bool commutes(const PauliOp &p, const PauliOp &q) { return !symplectic_pairing(p, q); }

gf2::BitMatrix symplectic_form(std::size_t n) {
  gf2::BitMatrix j(2 * n, 2 * n);
  for (std::size_t k = 0; k < n; ++k) {
    j.set(k, n + k, true);
    j.set(n + k, k, true);
  }
  return j;
}

Matrix materialize(const PauliOp &p, std::size_t cap) {
  if (p.n() > cap) {
    std::stringstream ss;
    ss << "materialize: " << p.n() << " qubits exceeds cap " << cap
       << "; use the symplectic representation instead";
    throw std::invalid_argument(ss.str());
  }
  const std::uint64_t dim = 1ULL << p.n();
  Matrix m = Matrix::Zero(dim, dim);
  for (std::uint64_t b = 0; b < dim; ++b) {
    auto [b2, c] = p.act(b);
    m(b2, b) = c;
  }
  return m;
}

Matrix left_apply(const PauliOp &p, const Matrix &m) {
  Matrix out(m.rows(), m.cols());
  for (Eigen::Index b = 0; b < m.rows(); ++b) {
    auto [b2, c] = p.act(b);
    out.row(b2) = c * m.row(b);
  }
  return out;
}

Matrix right_apply(const Matrix &m, const PauliOp &p) {
  // (M P)_{:, b} = sum_a M_{:, a} P_{a b}; P_{b2, b} = c
  Matrix out(m.rows(), m.cols());
  for (Eigen::Index b = 0; b < m.cols(); ++b) {
    auto [b2, c] = p.act(b);
    out.col(b) = c * m.col(b2);
  }
  return out;
}

Vector apply(const PauliOp &p, const Vector &v) {
  Vector out(v.size());
  for (Eigen::Index b = 0; b < v.size(); ++b) {
    auto [b2, c] = p.act(b);
    out(b2) = c * v(b);
  }
  return out;
}

cplx expectation(const PauliOp &p, const Matrix &rho) {
  // Tr(P rho) = sum_b <b|P rho|b> = sum_b sum_a P_{b a} rho_{a b}
  cplx acc = 0;
  for (Eigen::Index a = 0; a < rho.rows(); ++a) {
    auto [b, c] = p.act(a);
    acc += c * rho(a, b);
  }
  return acc;
}

}  // namespace steerkit::pauli
