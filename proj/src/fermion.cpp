#include "steerkit/fermion.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace steerkit::fermion {

namespace {

std::uint64_t bit_of(std::size_t modes, std::size_t mode) { return 1ULL << (modes - 1 - mode); }

void check_modes(std::size_t modes) {
  if (modes == 0 || modes > 62) throw std::invalid_argument("fermion: mode count must be in [1, 62]");
}

std::vector<std::uint64_t> subsets(std::size_t modes, std::size_t count) {
  std::vector<std::uint64_t> out;
  if (count > modes) return out;
  for (std::uint64_t c = 0; c < (1ULL << modes); ++c)
    if (std::size_t(std::popcount(c)) == count) out.push_back(c);
  return out;
}

}  // namespace

void Operator::add(cplx coeff, std::vector<Ladder> ops) {
  for (const auto &l : ops)
    if (l.mode >= modes) {
      std::stringstream ss;
      ss << "fermion term references mode " << l.mode << " but the operator has " << modes << " modes";
      throw std::invalid_argument(ss.str());
    }
  terms.push_back({coeff, std::move(ops)});
}

Operator Operator::adjoint() const {
  Operator out{modes, {}};
  for (const auto &t : terms) {
    Term a{std::conj(t.coeff), {}};
    for (auto it = t.ops.rbegin(); it != t.ops.rend(); ++it) a.ops.push_back({it->mode, !it->dagger});
    out.terms.push_back(std::move(a));
  }
  return out;
}

bool Operator::number_conserving() const {
  for (const auto &t : terms) {
    long balance = 0;
    for (const auto &l : t.ops) balance += l.dagger ? 1 : -1;
    if (balance != 0) return false;
  }
  return true;
}

int occupation(std::uint64_t code, std::size_t modes, std::size_t mode) {
  return (code & bit_of(modes, mode)) ? 1 : 0;
}

std::optional<std::pair<std::uint64_t, double>> apply_term(const Term &t, std::uint64_t code,
                                                           std::size_t modes) {
  double sign = 1;
  for (auto it = t.ops.rbegin(); it != t.ops.rend(); ++it) {
    const std::uint64_t b = bit_of(modes, it->mode);
    const bool occ = code & b;
    if (occ == it->dagger) return std::nullopt;
    // modes before `mode` sit in the higher bits
    const std::size_t shift = modes - it->mode;
    const int before = shift >= 64 ? 0 : std::popcount(code >> shift);
    if (before & 1) sign = -sign;
    code ^= b;
  }
  return std::make_pair(code, sign);
}

ed::Basis fock_basis(std::size_t modes) {
  check_modes(modes);
  ed::Basis b;
  b.sites = modes;
  b.fermionic = true;
  b.states.resize(std::size_t(1) << modes);
  for (std::size_t i = 0; i < b.states.size(); ++i) b.states[i] = i;
  return b;
}

ed::Basis number_sector(std::size_t modes, std::size_t particles) {
  check_modes(modes);
  if (particles > modes) throw std::invalid_argument("number_sector: more particles than modes");
  ed::Basis b;
  b.sites = modes;
  b.fermionic = true;
  b.states = subsets(modes, particles);
  b.species = {{modes, particles}};
  b.sector = "N=" + std::to_string(particles);
  return b;
}

ed::Basis species_sector(std::size_t per_species, std::size_t n_up, std::size_t n_down) {
  check_modes(2 * per_species);
  if (n_up > per_species || n_down > per_species)
    throw std::invalid_argument("species_sector: more particles than modes");
  ed::Basis b;
  b.sites = 2 * per_species;
  b.fermionic = true;
  auto up = subsets(per_species, n_up), dn = subsets(per_species, n_down);
  for (auto u : up)
    for (auto d : dn) b.states.push_back((u << per_species) | d);
  b.species = {{per_species, n_up}, {per_species, n_down}};
  b.sector = "Nup=" + std::to_string(n_up) + ",Ndn=" + std::to_string(n_down);
  return b;
}

ed::Basis parity_sector(std::size_t modes, int parity) {
  check_modes(modes);
  ed::Basis b;
  b.sites = modes;
  b.fermionic = true;
  for (std::uint64_t c = 0; c < (1ULL << modes); ++c)
    if ((std::popcount(c) & 1) == (parity & 1)) b.states.push_back(c);
  b.sector = parity & 1 ? "parity=odd" : "parity=even";
  return b;
}

ed::DenseHamiltonian to_dense(const Operator &op, const ed::Basis &basis) {
  const std::size_t dim = basis.dim();
  if (dim > std::size_t(ed::kDenseCap)) {
    std::stringstream ss;
    ss << "to_dense: basis dimension " << dim << " exceeds the dense cap; use symmetry_blocks";
    throw std::invalid_argument(ss.str());
  }
  ed::DenseHamiltonian h;
  h.basis = basis;
  h.matrix = Matrix::Zero(dim, dim);
  for (std::size_t j = 0; j < dim; ++j) {
    const std::uint64_t code = basis.code(j);
    for (const auto &t : op.terms) {
      auto r = apply_term(t, code, op.modes);
      if (!r) continue;
      auto i = basis.index_of(r->first);
      if (!i) {
        throw std::invalid_argument("to_dense: operator maps a basis state outside the sector " +
                                    (basis.sector.empty() ? std::string("(unnamed)") : basis.sector));
      }
      h.matrix(*i, j) += t.coeff * r->second;
    }
  }
  return h;
}

ed::DenseHamiltonian jordan_wigner(const Operator &op, std::size_t cap) {
  if (op.modes > cap) throw std::invalid_argument("jordan_wigner: mode count exceeds qubit cap");
  for (const auto &t : op.terms)
    for (const auto &l : t.ops)
      if (l.mode >= op.modes) throw std::invalid_argument("jordan_wigner: malformed term");
  auto h = to_dense(op, fock_basis(op.modes));
  h.basis = ed::Basis::spins(op.modes, 2);
  return h;
}

Matrix annihilation_matrix(std::size_t modes, std::size_t mode) {
  Operator op{modes, {}};
  op.add(1.0, {c(mode)});
  return jordan_wigner(op).matrix;
}

ed::DenseHamiltonian restrict_sector(const ed::DenseHamiltonian &full, const ed::Basis &sector,
                                     double tol) {
  const std::size_t dim = sector.dim();
  std::vector<bool> inside(full.dim(), false);
  std::vector<Eigen::Index> idx(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    std::uint64_t code = sector.code(i);
    if (Eigen::Index(code) >= full.dim()) throw std::invalid_argument("restrict_sector: code out of range");
    idx[i] = Eigen::Index(code);
    inside[code] = true;
  }
  double leak = 0;
  for (std::size_t j = 0; j < dim; ++j)
    for (Eigen::Index r = 0; r < full.dim(); ++r)
      if (!inside[r]) leak = std::max(leak, std::abs(full.matrix(r, idx[j])));
  if (leak > tol) {
    std::stringstream ss;
    ss << "restrict_sector: Hamiltonian does not commute with the sector constraint (leak " << leak << ")";
    throw std::invalid_argument(ss.str());
  }
  ed::DenseHamiltonian out;
  out.basis = sector;
  out.label = full.label;
  out.matrix.resize(dim, dim);
  for (std::size_t j = 0; j < dim; ++j)
    for (std::size_t i = 0; i < dim; ++i) out.matrix(i, j) = full.matrix(idx[i], idx[j]);
  return out;
}

Vector apply(const Operator &op, const ed::Basis &basis, const Vector &v) {
  Vector out = Vector::Zero(v.size());
  for (std::size_t j = 0; j < basis.dim(); ++j) {
    if (v(j) == cplx(0)) continue;
    for (const auto &t : op.terms) {
      auto r = apply_term(t, basis.code(j), op.modes);
      if (!r) continue;
      auto i = basis.index_of(r->first);
      if (!i) throw std::invalid_argument("apply: operator leaves the basis");
      out(*i) += t.coeff * r->second * v(j);
    }
  }
  return out;
}

SymmetryGroup lattice_translations(std::size_t lx, std::size_t ly, std::size_t species) {
  const std::size_t sites = lx * ly;
  SymmetryGroup g;
  for (std::size_t ty = 0; ty < ly; ++ty)
    for (std::size_t tx = 0; tx < lx; ++tx) {
      std::vector<std::size_t> perm(sites * species);
      for (std::size_t s = 0; s < species; ++s)
        for (std::size_t y = 0; y < ly; ++y)
          for (std::size_t x = 0; x < lx; ++x)
            perm[s * sites + x + lx * y] = s * sites + (x + tx) % lx + lx * ((y + ty) % ly);
      g.perms.push_back(std::move(perm));
    }
  for (std::size_t ky = 0; ky < ly; ++ky)
    for (std::size_t kx = 0; kx < lx; ++kx) {
      std::vector<cplx> chi;
      for (std::size_t ty = 0; ty < ly; ++ty)
        for (std::size_t tx = 0; tx < lx; ++tx) {
          double phase = 2 * std::numbers::pi * (double(kx * tx) / double(lx) + double(ky * ty) / double(ly));
          chi.push_back(std::polar(1.0, phase));
        }
      g.characters.push_back(std::move(chi));
      g.labels.push_back("kx=" + std::to_string(kx) + ",ky=" + std::to_string(ky));
    }
  return g;
}

std::pair<std::uint64_t, double> permute(const std::vector<std::size_t> &perm, std::uint64_t code,
                                         std::size_t modes) {
  std::vector<std::size_t> images;
  for (std::size_t m = 0; m < modes; ++m)
    if (code & bit_of(modes, m)) images.push_back(perm[m]);
  std::size_t inversions = 0;
  std::uint64_t out = 0;
  for (std::size_t a = 0; a < images.size(); ++a) {
    out |= bit_of(modes, images[a]);
    for (std::size_t b = a + 1; b < images.size(); ++b)
      if (images[a] > images[b]) ++inversions;
  }
  return {out, inversions & 1 ? -1.0 : 1.0};
}

Vector SymmetryBlock::embed(const Vector &u) const {
  Vector v = Vector::Zero(Eigen::Index(column.size()));
  for (std::size_t s = 0; s < column.size(); ++s)
    if (column[s] >= 0) v(Eigen::Index(s)) = amplitude[s] * u(column[s]);
  return v;
}

std::vector<SymmetryBlock> symmetry_blocks(const Operator &op, const ed::Basis &sector,
                                           const SymmetryGroup &group) {
  const std::size_t dim = sector.dim();
  const std::size_t G = group.perms.size();
  for (const auto &row : group.characters)
    if (row.size() != G) throw std::invalid_argument("symmetry_blocks: character table size mismatch");

  // orbits: representative index plus (member index, sign) for every group element
  std::vector<std::vector<std::pair<std::size_t, double>>> orbits;
  std::vector<bool> seen(dim, false);
  for (std::size_t i = 0; i < dim; ++i) {
    if (seen[i]) continue;
    std::vector<std::pair<std::size_t, double>> orbit;
    for (std::size_t g = 0; g < G; ++g) {
      auto [img, sign] = permute(group.perms[g], sector.code(i), op.modes);
      auto j = sector.index_of(img);
      if (!j) throw std::invalid_argument("symmetry_blocks: group does not preserve the sector");
      orbit.emplace_back(*j, sign);
      seen[*j] = true;
    }
    orbits.push_back(std::move(orbit));
  }

  // sparse rows of the operator on the sector, computed once
  std::vector<std::vector<std::pair<std::size_t, cplx>>> rows(dim);
  for (std::size_t j = 0; j < dim; ++j) {
    std::unordered_map<std::size_t, cplx> acc;
    for (const auto &t : op.terms) {
      auto r = apply_term(t, sector.code(j), op.modes);
      if (!r) continue;
      auto i = sector.index_of(r->first);
      if (!i) throw std::invalid_argument("symmetry_blocks: operator leaves the sector");
      acc[*i] += t.coeff * r->second;
    }
    for (const auto &[i, v] : acc)
      if (std::abs(v) > 0) rows[j].emplace_back(i, v);
  }

  std::vector<SymmetryBlock> blocks;
  for (std::size_t k = 0; k < group.characters.size(); ++k) {
    SymmetryBlock blk;
    blk.k = k;
    blk.label = k < group.labels.size() ? group.labels[k] : std::to_string(k);
    blk.column.assign(dim, -1);
    blk.amplitude.assign(dim, cplx(0));
    std::vector<std::vector<std::pair<std::size_t, cplx>>> cols;
    for (const auto &orbit : orbits) {
      std::unordered_map<std::size_t, cplx> amp;
      for (std::size_t g = 0; g < G; ++g)
        amp[orbit[g].first] += std::conj(group.characters[k][g]) * orbit[g].second;
      double norm2 = 0;
      for (const auto &[s, a] : amp) norm2 += std::norm(a);
      if (norm2 < 1e-10) continue;
      const double inv = 1.0 / std::sqrt(norm2);
      std::vector<std::pair<std::size_t, cplx>> col;
      for (const auto &[s, a] : amp)
        if (std::abs(a) > 1e-12) {
          blk.column[s] = long(cols.size());
          blk.amplitude[s] = a * inv;
          col.emplace_back(s, a * inv);
        }
      cols.push_back(std::move(col));
    }
    const std::size_t bd = cols.size();
    blk.h = Matrix::Zero(bd, bd);
    for (std::size_t cidx = 0; cidx < bd; ++cidx)
      for (const auto &[s, a] : cols[cidx])
        for (const auto &[i, hv] : rows[s])
          if (blk.column[i] >= 0) blk.h(blk.column[i], cidx) += std::conj(blk.amplitude[i]) * hv * a;
    blocks.push_back(std::move(blk));
  }
  return blocks;
}

namespace {

void check_unitary(const Matrix &u, std::size_t modes) {
  if (std::size_t(u.rows()) != modes || u.cols() != u.rows())
    throw std::invalid_argument("mode_transform: matrix size does not match the mode count");
  double err = (u.adjoint() * u - Matrix::Identity(u.rows(), u.cols())).norm();
  if (err > 1e-10) {
    std::stringstream ss;
    ss << "mode_transform: single-particle matrix is not unitary (error " << err << ")";
    throw std::invalid_argument(ss.str());
  }
}

// det(U[rows S, cols A]) for all n-subsets S, A of `len` local modes starting at `offset`
Matrix minor_table(const Matrix &u, std::size_t offset, std::size_t len, const std::vector<std::uint64_t> &sets) {
  const std::size_t m = sets.size();
  Matrix out(m, m);
  auto members = [len](std::uint64_t code) {
    std::vector<std::size_t> v;
    for (std::size_t k = 0; k < len; ++k)
      if (code & (1ULL << (len - 1 - k))) v.push_back(k);
    return v;
  };
  std::vector<std::vector<std::size_t>> mem(m);
  for (std::size_t i = 0; i < m; ++i) mem[i] = members(sets[i]);
  const std::size_t n = m ? mem[0].size() : 0;
  Matrix sub(n, n);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      if (n == 0) {
        out(i, j) = 1;
        continue;
      }
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c2 = 0; c2 < n; ++c2) sub(r, c2) = u(offset + mem[i][r], offset + mem[j][c2]);
      out(i, j) = sub.determinant();
    }
  return out;
}

}  // namespace

Operator mode_transform(const Operator &op, const Matrix &u, double drop) {
  check_unitary(u, op.modes);
  Operator out{op.modes, {}};
  for (const auto &t : op.terms) {
    std::vector<Term> partial{{t.coeff, {}}};
    for (const auto &l : t.ops) {
      std::vector<Term> next;
      for (const auto &p : partial)
        for (std::size_t i = 0; i < op.modes; ++i) {
          cplx w = l.dagger ? u(i, l.mode) : std::conj(u(i, l.mode));
          if (std::abs(w) <= drop) continue;
          Term q = p;
          q.coeff *= w;
          q.ops.push_back({i, l.dagger});
          next.push_back(std::move(q));
        }
      partial = std::move(next);
    }
    for (auto &p : partial)
      if (std::abs(p.coeff) > drop) out.terms.push_back(std::move(p));
  }
  return out;
}

Vector mode_transform(const Vector &psi, const ed::Basis &basis, const Matrix &u) {
  check_unitary(u, basis.sites);
  if (!basis.fermionic || basis.species.empty() || basis.species.size() > 2)
    throw std::invalid_argument("mode_transform: state must live in a number or two-species sector");
  if (psi.size() != Eigen::Index(basis.dim())) throw std::invalid_argument("mode_transform: state size mismatch");
  std::vector<std::size_t> offset;
  std::size_t off = 0;
  for (const auto &[len, n] : basis.species) {
    offset.push_back(off);
    off += len;
  }
  // the matrix must not mix species
  for (std::size_t a = 0; a < basis.species.size(); ++a)
    for (std::size_t b = 0; b < basis.species.size(); ++b) {
      if (a == b) continue;
      double mix = u.block(offset[a], offset[b], basis.species[a].first, basis.species[b].first).norm();
      if (mix > 1e-12) throw std::invalid_argument("mode_transform: single-particle matrix mixes species");
    }
  std::vector<Matrix> tables;
  std::vector<std::vector<std::uint64_t>> sets;
  for (std::size_t a = 0; a < basis.species.size(); ++a) {
    sets.push_back(subsets(basis.species[a].first, basis.species[a].second));
    tables.push_back(minor_table(u, offset[a], basis.species[a].first, sets.back()));
  }
  if (basis.species.size() == 1) return tables[0] * psi;
  // sector codes are (up code, down code) in lexicographic order
  const Eigen::Index nu = Eigen::Index(sets[0].size()), nd = Eigen::Index(sets[1].size());
  Matrix grid(nu, nd);
  for (Eigen::Index i = 0; i < nu; ++i)
    for (Eigen::Index j = 0; j < nd; ++j) grid(i, j) = psi(i * nd + j);
  Matrix out = tables[0] * grid * tables[1].transpose();
  Vector v(psi.size());
  for (Eigen::Index i = 0; i < nu; ++i)
    for (Eigen::Index j = 0; j < nd; ++j) v(i * nd + j) = out(i, j);
  return v;
}

}  // namespace steerkit::fermion
