#include "steerkit/models.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

namespace steerkit::models {

using pauli::PauliOp;

std::string to_string(Kind k) {
  switch (k) {
    case Kind::ising_chain: return "ising_chain";
    case Kind::heisenberg_chain: return "heisenberg_chain";
    case Kind::syk_dirac: return "syk_dirac";
    case Kind::syk_majorana: return "syk_majorana";
    case Kind::fermi_hubbard: return "fermi_hubbard";
    case Kind::commuting_pauli_custom: return "commuting_pauli_custom";
  }
  return "unknown";
}

Kind kind_from_string(const std::string &s) {
  for (Kind k : {Kind::ising_chain, Kind::heisenberg_chain, Kind::syk_dirac, Kind::syk_majorana,
                 Kind::fermi_hubbard, Kind::commuting_pauli_custom})
    if (to_string(k) == s) return k;
  throw std::invalid_argument("unknown model kind '" + s + "'");
}

Boundary boundary_from_string(const std::string &s) {
  if (s == "periodic") return Boundary::periodic;
  if (s == "open") return Boundary::open;
  throw std::invalid_argument("unknown boundary '" + s + "' (expected periodic or open)");
}

cph::CommutingHamiltonian build_ising(std::size_t n, int sign, Boundary boundary, char axis) {
  if (n < 3) throw std::invalid_argument("build_ising: N must be at least 3");
  if (sign != 1 && sign != -1) throw std::invalid_argument("build_ising: sign must be +1 or -1");
  if (axis != 'X' && axis != 'Y' && axis != 'Z') throw std::invalid_argument("build_ising: axis must be X, Y or Z");
  std::vector<cph::Term> terms;
  const std::size_t bonds = boundary == Boundary::periodic ? n : n - 1;
  for (std::size_t i = 0; i < bonds; ++i) {
    std::string s(n, 'I');
    s[i] = axis;
    s[(i + 1) % n] = axis;
    terms.push_back({PauliOp::from_string((sign > 0 ? "+" : "-") + s), 1.0});
  }
  return cph::CommutingHamiltonian::build(terms);
}

namespace {

void add_two_site(Matrix &h, const Matrix &h2, std::size_t i, std::size_t j, std::size_t n, std::size_t d) {
  std::vector<std::size_t> stride(n);
  for (std::size_t k = 0, st = 1; k < n; ++k, st *= d) stride[n - 1 - k] = st;
  const std::size_t dim = std::size_t(h.rows());
  for (std::size_t b = 0; b < dim; ++b) {
    std::size_t di = (b / stride[i]) % d, dj = (b / stride[j]) % d;
    std::size_t rest = b - di * stride[i] - dj * stride[j];
    std::size_t col = di * d + dj;
    for (std::size_t a = 0; a < d; ++a)
      for (std::size_t c = 0; c < d; ++c) {
        cplx v = h2(a * d + c, col);
        if (v != cplx(0)) h(rest + a * stride[i] + c * stride[j], b) += v;
      }
  }
}

Matrix kron(const Matrix &a, const Matrix &b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index r = 0; r < a.rows(); ++r)
    for (Eigen::Index c = 0; c < a.cols(); ++c)
      out.block(r * b.rows(), c * b.cols(), b.rows(), b.cols()) = a(r, c) * b;
  return out;
}

}  // namespace

ed::DenseHamiltonian build_heisenberg(std::size_t n, double s, Boundary boundary) {
  if (n < 2) throw std::invalid_argument("build_heisenberg: N must be at least 2");
  const std::size_t d = ed::spin_dimension(s);
  double dim_d = std::pow(double(d), double(n));
  if (dim_d > double(ed::kDenseCap)) {
    std::stringstream ss;
    ss << "build_heisenberg: dimension " << dim_d << " exceeds the dense cap";
    throw std::invalid_argument(ss.str());
  }
  auto m = ed::spin_matrices(s);
  Matrix h2 = kron(m.sx, m.sx) + kron(m.sy, m.sy) + kron(m.sz, m.sz);
  ed::DenseHamiltonian h;
  h.basis = ed::Basis::spins(n, d);
  h.matrix = Matrix::Zero(Eigen::Index(dim_d), Eigen::Index(dim_d));
  const std::size_t bonds = boundary == Boundary::periodic ? (n == 2 ? 1 : n) : n - 1;
  for (std::size_t i = 0; i < bonds; ++i) add_two_site(h.matrix, h2, i, (i + 1) % n, n, d);
  std::stringstream ss;
  ss << "heisenberg N=" << n << " s=" << s;
  h.label = ss.str();
  return h;
}

std::array<Matrix, 3> total_spin(std::size_t n, double s) {
  const std::size_t d = ed::spin_dimension(s);
  auto m = ed::spin_matrices(s);
  std::array<Matrix, 3> out;
  const Matrix *ops[3] = {&m.sx, &m.sy, &m.sz};
  for (int a = 0; a < 3; ++a) {
    out[a] = ed::embed(*ops[a], {0}, n, d);
    for (std::size_t i = 1; i < n; ++i) out[a] += ed::embed(*ops[a], {i}, n, d);
  }
  return out;
}

DiracSyk build_syk_dirac(std::size_t n, double mu, std::uint64_t seed, double variance) {
  if (n < 4 || n > 15) throw std::invalid_argument("build_syk_dirac: N must be in [4, 15]");
  if (variance <= 0) throw std::invalid_argument("build_syk_dirac: variance must be positive");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  const std::size_t P = pairs.size();
  // Hermitian matrix over pair labels, E|J|^2 = variance
  Matrix jm(P, P);
  for (std::size_t a = 0; a < P; ++a) {
    jm(a, a) = std::sqrt(variance) * g(rng);
    for (std::size_t b = a + 1; b < P; ++b) {
      cplx z(g(rng), g(rng));
      jm(a, b) = z * std::sqrt(variance / 2);
      jm(b, a) = std::conj(jm(a, b));
    }
  }
  DiracSyk out;
  out.modes = n;
  out.mu = mu;
  out.op.modes = n;
  // the four orderings of (ij) and (kl) each contribute once by antisymmetry
  const double pref = 4.0 / std::pow(2.0 * double(n), 1.5);
  for (std::size_t a = 0; a < P; ++a)
    for (std::size_t b = 0; b < P; ++b) {
      auto [i, j] = pairs[a];
      auto [k, l] = pairs[b];
      out.index.push_back({i, j, k, l});
      out.coupling.push_back(jm(a, b));
      out.op.add(pref * jm(a, b), {fermion::cdag(i), fermion::cdag(j), fermion::c(k), fermion::c(l)});
    }
  if (mu != 0)
    for (std::size_t i = 0; i < n; ++i) out.op.add(-mu, {fermion::cdag(i), fermion::c(i)});
  return out;
}

pauli::PauliOp majorana_pauli(std::size_t modes, std::size_t a) {
  if (a >= 2 * modes) throw std::invalid_argument("majorana_pauli: index out of range");
  const std::size_t j = a / 2;
  std::string s(modes, 'I');
  for (std::size_t k = 0; k < j; ++k) s[k] = 'Z';
  s[j] = (a % 2 == 0) ? 'Y' : 'X';
  return PauliOp::from_string(s);
}

MajoranaSyk build_syk_majorana(std::size_t n, std::uint64_t seed, double variance) {
  if (n < 2 || n > 12) throw std::invalid_argument("build_syk_majorana: N must be in [2, 12]");
  if (variance <= 0) throw std::invalid_argument("build_syk_majorana: variance must be positive");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, std::sqrt(variance));
  MajoranaSyk out;
  out.modes = n;
  const std::size_t m = 2 * n;
  // 4! orderings of each quadruple contribute equally under full antisymmetry
  const double pref = 24.0 / std::pow(double(n), 1.5);
  std::vector<PauliOp> gam;
  for (std::size_t a = 0; a < m; ++a) gam.push_back(majorana_pauli(n, a));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j)
      for (std::size_t k = j + 1; k < m; ++k)
        for (std::size_t l = k + 1; l < m; ++l) {
          double jv = g(rng);
          out.index.push_back({i, j, k, l});
          out.coupling.push_back(jv);
          PauliOp p = gam[i] * gam[j] * gam[k] * gam[l];
          if (!p.is_hermitian()) throw std::logic_error("Majorana quartic is not Hermitian");
          double w = pref * jv * p.sign();
          p.set_phase(0);
          out.paulis.push_back(p);
          out.weights.push_back(w);
        }
  return out;
}

ed::DenseHamiltonian MajoranaSyk::dense() const {
  auto h = ed::from_paulis(paulis, weights);
  h.label = "syk_majorana N=" + std::to_string(modes);
  return h;
}

fermion::Operator MajoranaSyk::to_fermions() const {
  fermion::Operator op{modes, {}};
  const double pref = 24.0 / std::pow(double(modes), 1.5);
  // each Majorana as two ladder terms
  auto expand = [](std::size_t a) {
    const std::size_t j = a / 2;
    std::vector<std::pair<cplx, fermion::Ladder>> v;
    if (a % 2 == 0) {
      v.push_back({cplx(0, -1), fermion::c(j)});
      v.push_back({cplx(0, 1), fermion::cdag(j)});
    } else {
      v.push_back({1.0, fermion::c(j)});
      v.push_back({1.0, fermion::cdag(j)});
    }
    return v;
  };
  for (std::size_t q = 0; q < index.size(); ++q) {
    auto e0 = expand(index[q][0]), e1 = expand(index[q][1]), e2 = expand(index[q][2]), e3 = expand(index[q][3]);
    for (auto &a : e0)
      for (auto &b : e1)
        for (auto &c2 : e2)
          for (auto &d : e3)
            op.add(pref * coupling[q] * a.first * b.first * c2.first * d.first,
                   {a.second, b.second, c2.second, d.second});
  }
  return op;
}

std::vector<std::pair<std::size_t, std::size_t>> lattice_bonds(std::size_t lx, std::size_t ly,
                                                               Boundary boundary) {
  std::set<std::pair<std::size_t, std::size_t>> bonds;
  auto add = [&bonds](std::size_t a, std::size_t b) {
    if (a != b) bonds.insert({std::min(a, b), std::max(a, b)});
  };
  const bool wrap = boundary == Boundary::periodic;
  for (std::size_t y = 0; y < ly; ++y)
    for (std::size_t x = 0; x < lx; ++x) {
      std::size_t a = x + lx * y;
      if (x + 1 < lx || wrap) add(a, (x + 1) % lx + lx * y);
      if (y + 1 < ly || wrap) add(a, x + lx * ((y + 1) % ly));
    }
  return {bonds.begin(), bonds.end()};
}

fermion::Operator build_fermi_hubbard(std::size_t lx, std::size_t ly, double t, double u, Boundary boundary) {
  if (lx == 0 || ly == 0) throw std::invalid_argument("build_fermi_hubbard: empty lattice");
  const std::size_t sites = lx * ly;
  if (2 * sites > 30) throw std::invalid_argument("build_fermi_hubbard: too many modes");
  fermion::Operator h{2 * sites, {}};
  for (auto [a, b] : lattice_bonds(lx, ly, boundary))
    for (std::size_t s = 0; s < 2; ++s) {
      h.add(-t, {fermion::cdag(a + s * sites), fermion::c(b + s * sites)});
      h.add(-t, {fermion::cdag(b + s * sites), fermion::c(a + s * sites)});
    }
  for (std::size_t a = 0; a < sites; ++a)
    h.add(u, {fermion::cdag(a), fermion::c(a), fermion::cdag(a + sites), fermion::c(a + sites)});
  return h;
}

fermion::Operator number_operator(std::size_t modes, std::size_t first, std::size_t count) {
  fermion::Operator n{modes, {}};
  for (std::size_t m = first; m < first + count; ++m) n.add(1.0, {fermion::cdag(m), fermion::c(m)});
  return n;
}

cph::CommutingHamiltonian build_commuting(const std::vector<cph::Term> &terms) {
  return cph::CommutingHamiltonian::build(terms);
}

void ModelSpec::validate() const {
  auto fail = [](const std::string &field, const std::string &msg) {
    throw std::invalid_argument("model." + field + ": " + msg);
  };
  switch (kind) {
    case Kind::ising_chain:
      if (n < 3) fail("n", "Ising chain needs N >= 3");
      if (sign != 1 && sign != -1) fail("sign", "must be +1 or -1");
      if (axis != 'X' && axis != 'Y' && axis != 'Z') fail("axis", "must be X, Y or Z");
      break;
    case Kind::heisenberg_chain: {
      if (n < 2) fail("n", "Heisenberg chain needs N >= 2");
      bool ok = false;
      for (double s : {0.5, 1.0, 1.5, 2.0}) ok = ok || std::abs(spin - s) < 1e-12;
      if (!ok) fail("spin", "must be one of 1/2, 1, 3/2, 2");
      break;
    }
    case Kind::syk_dirac:
      if (n < 4 || n > 15) fail("n", "Dirac SYK supports 4 <= N <= 15");
      if (variance <= 0) fail("variance", "must be positive");
      if (particles && *particles > n) fail("particles", "exceeds the mode count");
      break;
    case Kind::syk_majorana:
      if (n < 2 || n > 12) fail("n", "Majorana SYK supports 2 <= N <= 12");
      if (variance <= 0) fail("variance", "must be positive");
      break;
    case Kind::fermi_hubbard:
      if (lx == 0 || ly == 0) fail("lx", "lattice dimensions must be positive");
      if (lx * ly > 15) fail("lx", "at most 15 sites");
      if (n_up && *n_up > lx * ly) fail("n_up", "exceeds the site count");
      if (n_down && *n_down > lx * ly) fail("n_down", "exceeds the site count");
      break;
    case Kind::commuting_pauli_custom:
      if (terms.empty()) fail("terms", "at least one term required");
      break;
  }
}

}  // namespace steerkit::models
