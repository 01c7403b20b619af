#include "steerkit/cph.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

namespace steerkit::cph {

using gf2::BitMatrix;
using gf2::BitVector;
using pauli::PauliOp;

CommutingHamiltonian CommutingHamiltonian::build(const std::vector<PauliOp> &terms) {
  std::vector<Term> t;
  for (const auto &p : terms) t.push_back({p, 1.0});
  return build(t);
}

CommutingHamiltonian CommutingHamiltonian::build(const std::vector<Term> &terms) {
  if (terms.empty()) throw std::invalid_argument("commuting Hamiltonian needs at least one term");
  CommutingHamiltonian h;
  h.n_ = terms[0].op.n();
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const auto &p = terms[i].op;
    if (p.n() != h.n_) {
      std::stringstream ss;
      ss << "term " << i << " acts on " << p.n() << " qubits, expected " << h.n_;
      throw std::invalid_argument(ss.str());
    }
    if (!p.is_hermitian()) {
      std::stringstream ss;
      ss << "term " << i << " (" << p.to_string() << ") is not Hermitian";
      throw std::invalid_argument(ss.str());
    }
    h.terms_.push_back(p);
    h.coeffs_.push_back(terms[i].coeff);
  }
  const std::size_t N = h.terms_.size();
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = i + 1; j < N; ++j)
      if (!pauli::commutes(h.terms_[i], h.terms_[j])) {
        std::stringstream ss;
        ss << "terms " << i << " (" << h.terms_[i].to_string() << ") and " << j << " ("
           << h.terms_[j].to_string() << ") anticommute";
        throw std::invalid_argument(ss.str());
      }

  h.m_p_ = BitMatrix(0, 2 * h.n_);
  for (const auto &p : h.terms_) h.m_p_.append_row(p.symplectic());

  // relations: c with c^T M_P = 0, brought to reduced row-echelon form
  auto rel = gf2::left_null_space(h.m_p_);
  BitMatrix c(0, N);
  for (const auto &r : rel) c.append_row(r);
  auto rr = gf2::row_reduce(c);
  h.c_h_ = BitMatrix(0, N);
  for (std::size_t i = 0; i < rr.rank; ++i) h.c_h_.append_row(rr.reduced.row(i));
  h.pivots_ = rr.pivots;
  const std::size_t dr = rr.rank;

  std::vector<bool> is_pivot(N, false);
  for (auto p : h.pivots_) is_pivot[p] = true;
  for (std::size_t i = 0; i < N; ++i)
    if (!is_pivot[i]) h.generators_.push_back(i);
  h.order_ = h.pivots_;
  h.order_.insert(h.order_.end(), h.generators_.begin(), h.generators_.end());

  h.p_ph_ = BitVector(dr);
  for (std::size_t r = 0; r < dr; ++r) {
    PauliOp prod = h.product(h.c_h_.row(r));
    if (!prod.is_identity())
      throw std::logic_error("relation product is not proportional to the identity");
    if (prod.phase() % 2)
      throw std::logic_error("relation product has an imaginary phase");
    h.p_ph_.set(r, prod.phase() == 2);
  }

  // In permuted coordinates C = [1 | K], so B0 = [1 | 0], A0 = [K^T | 1], D_H = [0 | 1].
  h.b0_ = BitMatrix(dr, N);
  for (std::size_t r = 0; r < dr; ++r) h.b0_.set(r, h.pivots_[r], true);
  h.a0_ = BitMatrix(N - dr, N);
  h.d_h_ = BitMatrix(N - dr, N);
  for (std::size_t k = 0; k < h.generators_.size(); ++k) {
    std::size_t f = h.generators_[k];
    h.a0_.set(k, f, true);
    h.d_h_.set(k, f, true);
    for (std::size_t r = 0; r < dr; ++r)
      if (h.c_h_.get(r, f)) h.a0_.set(k, h.pivots_[r], true);
  }
  return h;
}

bool CommutingHamiltonian::feasible(const BitVector &v) const {
  if (v.size() != num_terms()) return false;
  return c_h_ * v == p_ph_;
}

double CommutingHamiltonian::energy(const BitVector &v) const {
  double e = 0;
  for (std::size_t i = 0; i < num_terms(); ++i) e += v.get(i) ? -coeffs_[i] : coeffs_[i];
  return e;
}

BitVector CommutingHamiltonian::particular_solution() const {
  BitVector v(num_terms());
  for (std::size_t r = 0; r < num_relations(); ++r) v.set(pivots_[r], p_ph_.get(r));
  return v;
}

PauliOp CommutingHamiltonian::product(const BitVector &c) const {
  PauliOp prod(n_);
  for (std::size_t i = 0; i < num_terms(); ++i)
    if (c.get(i)) prod = pauli::multiply(prod, terms_[i]);
  return prod;
}

std::size_t CommutingHamiltonian::interaction_range() const {
  std::size_t best = 0;
  for (const auto &t : terms_) {
    auto s = t.support();
    if (s.empty()) continue;
    std::size_t maxgap = n_ - s.back() + s.front();  // wrap-around gap
    for (std::size_t k = 1; k < s.size(); ++k) maxgap = std::max(maxgap, s[k] - s[k - 1]);
    best = std::max(best, n_ - maxgap + 1);
  }
  return best;
}

Matrix CommutingHamiltonian::materialize(std::size_t cap) const {
  if (n_ > cap) {
    std::stringstream ss;
    ss << "materialize: " << n_ << " qubits exceeds cap " << cap;
    throw std::invalid_argument(ss.str());
  }
  const std::uint64_t dim = 1ULL << n_;
  Matrix m = Matrix::Zero(dim, dim);
  for (std::size_t i = 0; i < num_terms(); ++i)
    for (std::uint64_t b = 0; b < dim; ++b) {
      auto [b2, c] = terms_[i].act(b);
      m(b2, b) += coeffs_[i] * c;
    }
  return m;
}

std::vector<SpectrumEntry> enumerate_spectrum(const CommutingHamiltonian &h, std::size_t cap) {
  const std::size_t g = h.num_generators();
  if (g > cap) {
    std::stringstream ss;
    ss << "enumerate_spectrum: 2^" << g << " energy vectors exceed cap 2^" << cap
       << "; use ground_energy_search instead";
    throw std::invalid_argument(ss.str());
  }
  const std::uint64_t mult = 1ULL << h.log2_multiplicity();
  std::vector<SpectrumEntry> out;
  out.reserve(std::size_t(1) << g);
  BitVector v = h.particular_solution();
  const std::uint64_t count = 1ULL << g;
  for (std::uint64_t k = 0; k < count; ++k) {
    if (k) v ^= h.A0().row(std::countr_zero(k));
    out.push_back({v, h.energy(v), mult});
  }
  return out;
}

std::vector<Level> merge_levels(const std::vector<SpectrumEntry> &spectrum, double tol) {
  std::vector<std::pair<double, std::uint64_t>> e;
  for (const auto &s : spectrum) e.emplace_back(s.energy, s.multiplicity);
  std::sort(e.begin(), e.end());
  std::vector<Level> out;
  for (const auto &[en, m] : e) {
    if (!out.empty() && std::abs(en - out.back().energy) <= tol)
      out.back().multiplicity += m;
    else
      out.push_back({en, m});
  }
  return out;
}

SearchResult ground_energy_search(const CommutingHamiltonian &h, std::uint64_t budget,
                                  std::uint64_t seed, std::size_t exhaustive_cap) {
  if (budget < 1) throw std::invalid_argument("ground_energy_search: budget must be >= 1");
  const std::size_t g = h.num_generators();
  SearchResult res;
  res.best = h.particular_solution();
  res.energy = h.energy(res.best);
  res.evaluated = 1;
  if (g <= exhaustive_cap) {
    BitVector v = res.best;
    const std::uint64_t count = 1ULL << g;
    for (std::uint64_t k = 1; k < count; ++k) {
      v ^= h.A0().row(std::countr_zero(k));
      double e = h.energy(v);
      if (e < res.energy - 1e-12) {
        res.energy = e;
        res.best = v;
      }
    }
    res.evaluated = count;
    res.exact = true;
    return res;
  }
  // greedy descent over generator flips with random restarts
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, g - 1);
  BitVector v = res.best;
  double e = res.energy;
  std::uint64_t stall = 0;
  for (std::uint64_t step = 0; step < budget; ++step) {
    std::size_t k = pick(rng);
    BitVector w = v ^ h.A0().row(k);
    double ew = h.energy(w);
    ++res.evaluated;
    if (ew <= e) {
      stall = (ew < e - 1e-12) ? 0 : stall + 1;
      v = w;
      e = ew;
    } else {
      ++stall;
    }
    if (e < res.energy - 1e-12) {
      res.energy = e;
      res.best = v;
    }
    if (stall > 8 * g) {
      v = h.particular_solution();
      for (std::size_t r = 0; r < g; ++r)
        if (rng() & 1) v ^= h.A0().row(r);
      e = h.energy(v);
      stall = 0;
    }
  }
  return res;
}

std::vector<BitVector> ground_vectors(const CommutingHamiltonian &h, double tol) {
  auto spec = enumerate_spectrum(h);
  double emin = spec.front().energy;
  for (const auto &s : spec) emin = std::min(emin, s.energy);
  std::vector<BitVector> out;
  for (const auto &s : spec)
    if (s.energy <= emin + tol) out.push_back(s.v);
  return out;
}

Matrix eigenspace_projector(const CommutingHamiltonian &h, const BitVector &v, std::size_t cap) {
  if (!h.feasible(v)) {
    throw std::invalid_argument("eigenspace_projector: energy vector " + v.to_string() +
                                " violates C_H v = p_ph");
  }
  if (h.n() > cap) throw std::invalid_argument("eigenspace_projector: qubit count exceeds cap");
  const Eigen::Index dim = Eigen::Index(1) << h.n();
  Matrix p = Matrix::Identity(dim, dim);
  for (std::size_t i = 0; i < h.num_terms(); ++i) {
    double s = v.get(i) ? -1.0 : 1.0;
    p = 0.5 * (p + s * pauli::left_apply(h.term(i), p));
  }
  return p;
}

Matrix ground_projector(const CommutingHamiltonian &h, double tol) {
  auto gv = ground_vectors(h, tol);
  const Eigen::Index dim = Eigen::Index(1) << h.n();
  Matrix p = Matrix::Zero(dim, dim);
  for (const auto &v : gv) p += eigenspace_projector(h, v);
  return p;
}

std::vector<Term> random_commuting_terms(std::size_t n, std::size_t num_terms, std::uint64_t seed,
                                         bool random_coeffs) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coeff(0.5, 1.5);
  std::vector<Term> out;
  std::size_t attempts = 0;
  while (out.size() < num_terms) {
    if (++attempts > 100000) throw std::runtime_error("random_commuting_terms: no commuting candidate");
    PauliOp cand(n);
    if (!out.empty() && rng() % 10 < 3) {
      for (const auto &t : out)
        if (rng() & 1) cand = pauli::multiply(cand, t.op);
      cand.set_phase(cand.phase() + 2 * int(rng() & 1));
    } else {
      BitVector x(n), z(n);
      for (std::size_t k = 0; k < n; ++k) {
        x.set(k, rng() & 1);
        z.set(k, rng() & 1);
      }
      cand = PauliOp(x, z, 0);
      // Y letters carry no extra phase in this representation, so the operator is Hermitian
      cand.set_phase(2 * int(rng() & 1));
    }
    if (cand.is_identity()) continue;
    bool ok = true;
    for (const auto &t : out)
      if (!pauli::commutes(cand, t.op)) {
        ok = false;
        break;
      }
    if (!ok) continue;
    out.push_back({cand, random_coeffs ? coeff(rng) : 1.0});
  }
  return out;
}

}  // namespace steerkit::cph
