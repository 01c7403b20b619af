#include "steerkit/steering.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

#include "steerkit/ed.hpp"

namespace steerkit::steering {

using gf2::BitMatrix;
using gf2::BitVector;
using pauli::PauliOp;

namespace {

constexpr std::size_t kExactQubitCap = 10;
constexpr std::size_t kExhaustiveKernelDim = 16;

// rows (z_i | x_i) so that row . (x_v | z_v) is the symplectic pairing with term i
BitMatrix pairing_matrix(const cph::CommutingHamiltonian &h) {
  const std::size_t n = h.n();
  BitMatrix r(h.num_terms(), 2 * n);
  for (std::size_t i = 0; i < h.num_terms(); ++i) {
    const auto &t = h.term(i);
    for (std::size_t k = 0; k < n; ++k) {
      r.set(i, k, t.z().get(k));
      r.set(i, n + k, t.x().get(k));
    }
  }
  return r;
}

std::size_t support_of(const BitVector &w, std::size_t n) {
  std::size_t s = 0;
  for (std::size_t k = 0; k < n; ++k) s += (w.get(k) || w.get(n + k)) ? 1 : 0;
  return s;
}

std::size_t z_count(const BitVector &w, std::size_t n) {
  std::size_t s = 0;
  for (std::size_t k = 0; k < n; ++k) s += w.get(n + k) ? 1 : 0;
  return s;
}

bool better(const BitVector &a, const BitVector &b, std::size_t n) {
  std::size_t sa = support_of(a, n), sb = support_of(b, n);
  if (sa != sb) return sa < sb;
  return z_count(a, n) < z_count(b, n);
}

PauliOp restrict_to(const PauliOp &p, const std::vector<std::size_t> &support) {
  std::string s;
  for (std::size_t q : support) s.push_back(p.letter(q));
  PauliOp out = PauliOp::from_string(s);
  out.set_phase(p.phase());
  return out;
}

std::vector<std::size_t> union_support(const PauliOp &a, const PauliOp &b) {
  auto sa = a.support(), sb = b.support();
  std::vector<std::size_t> out;
  std::set_union(sa.begin(), sa.end(), sb.begin(), sb.end(), std::back_inserter(out));
  if (out.empty()) out.push_back(0);
  return out;
}

BitVector random_nonzero(std::size_t len, std::mt19937_64 &rng) {
  BitVector e(len);
  do {
    for (std::size_t i = 0; i < len; ++i) e.set(i, rng() & 1ULL);
  } while (e.is_zero());
  return e;
}

Matrix random_pure_state(std::size_t n, std::mt19937_64 &rng) {
  std::normal_distribution<double> g;
  Vector psi(Eigen::Index(1) << n);
  for (Eigen::Index i = 0; i < psi.size(); ++i) psi[i] = cplx(g(rng), g(rng));
  psi.normalize();
  return psi * psi.adjoint();
}

double expectation_real(const Matrix &rho, const Matrix &op) { return (rho * op).trace().real(); }

}  // namespace

BitVector pattern_of(const cph::CommutingHamiltonian &h, const PauliOp &v) {
  BitVector g(h.num_terms());
  for (std::size_t i = 0; i < h.num_terms(); ++i) g.set(i, pauli::symplectic_pairing(h.term(i), v));
  return g;
}

std::size_t default_budget(const cph::CommutingHamiltonian &h) { return h.interaction_range() + 1; }

FlipOperator construct_flip_operator(const cph::CommutingHamiltonian &h, const BitVector &g,
                                     std::size_t locality_budget) {
  if (g.size() != h.num_terms()) throw std::invalid_argument("construct_flip_operator: pattern length mismatch");
  if (h.num_relations() > 0 && !(h.C_H() * g).is_zero())
    throw std::invalid_argument("construct_flip_operator: pattern " + g.to_string() +
                                " is not in the null space of C_H");
  const std::size_t n = h.n();
  BitMatrix r = pairing_matrix(h);
  auto sol = gf2::solve(r, g);
  if (!sol) throw std::logic_error("construct_flip_operator: no solution for a null-space pattern");
  BitVector best = *sol;
  auto kernel = gf2::right_null_space(r);
  if (kernel.size() <= kExhaustiveKernelDim) {
    const std::uint64_t count = 1ULL << kernel.size();
    // Gray-code walk over the coset
    BitVector cur = *sol;
    for (std::uint64_t k = 1; k < count; ++k) {
      cur ^= kernel[std::size_t(__builtin_ctzll(k))];
      if (better(cur, best, n)) best = cur;
    }
  } else {
    bool improved = true;
    while (improved) {
      improved = false;
      for (const auto &kv : kernel) {
        BitVector trial = best ^ kv;
        if (better(trial, best, n)) {
          best = trial;
          improved = true;
        }
      }
    }
  }
  FlipOperator out;
  out.v = PauliOp::from_symplectic(best);
  out.support = support_of(best, n);
  out.within_budget = out.support <= locality_budget;
  return out;
}

FlipOperator flip_from_coefficients(const cph::CommutingHamiltonian &h, const BitVector &e,
                                    std::size_t locality_budget) {
  if (e.size() != h.num_generators())
    throw std::invalid_argument("flip_from_coefficients: expected " + std::to_string(h.num_generators()) +
                                " coefficients");
  return construct_flip_operator(h, h.A0().left_multiply(e), locality_budget);
}

SteeringDescriptor make_descriptor(const cph::CommutingHamiltonian &h, std::size_t j, int sign,
                                   const BitVector &e, std::size_t locality_budget) {
  if (j >= h.num_terms()) throw std::invalid_argument("make_descriptor: term index out of range");
  if (sign != 1 && sign != -1) throw std::invalid_argument("make_descriptor: sign must be +1 or -1");
  if (locality_budget == 0) locality_budget = default_budget(h);
  auto flip = flip_from_coefficients(h, e, locality_budget);
  SteeringDescriptor d;
  d.j = j;
  d.sign = sign;
  d.e = e;
  d.g = h.A0().left_multiply(e);
  d.v = flip.v;
  d.local = flip.within_budget;
  return d;
}

double Superoperator::cptp_error() const {
  if (kraus.empty()) return 0;
  Matrix s = Matrix::Zero(kraus[0].cols(), kraus[0].cols());
  for (const auto &k : kraus) s += k.adjoint() * k;
  return (s - Matrix::Identity(s.rows(), s.cols())).norm();
}

std::vector<Matrix> Superoperator::full_kraus() const {
  std::vector<Matrix> out;
  for (const auto &k : kraus) out.push_back(ed::embed(k, support, num_qubits, 2));
  return out;
}

Superoperator make_superoperator(const cph::CommutingHamiltonian &h, const SteeringDescriptor &d) {
  const auto &hj = h.term(d.j);
  if (pattern_of(h, d.v) != d.g) throw std::invalid_argument("make_superoperator: V does not realize the pattern");
  Superoperator s;
  s.support = union_support(hj, d.v);
  s.num_qubits = h.n();
  s.descriptor = d;
  Matrix hl = pauli::materialize(restrict_to(hj, s.support));
  Matrix vl = pauli::materialize(restrict_to(d.v, s.support));
  Matrix id = Matrix::Identity(hl.rows(), hl.cols());
  const double sg = d.sign;
  s.kraus.push_back(0.5 * (id + sg * hl));
  s.kraus.push_back(vl * (0.5 * (id - sg * hl)));
  double err = s.cptp_error();
  if (err > kCptpTol) {
    std::stringstream ss;
    ss << "make_superoperator: CPTP check failed (" << err << ")";
    throw std::logic_error(ss.str());
  }
  return s;
}

Matrix apply(const Superoperator &s, const Matrix &rho) {
  const Eigen::Index dim = Eigen::Index(1) << s.num_qubits;
  if (rho.rows() != dim || rho.cols() != dim) throw std::invalid_argument("apply: dimension mismatch");
  Matrix out = Matrix::Zero(dim, dim);
  for (const auto &k : s.full_kraus()) out += k * rho * k.adjoint();
  return out;
}

Matrix adjoint(const Superoperator &s, const Matrix &obs) {
  const Eigen::Index dim = Eigen::Index(1) << s.num_qubits;
  if (obs.rows() != dim || obs.cols() != dim) throw std::invalid_argument("adjoint: dimension mismatch");
  Matrix out = Matrix::Zero(dim, dim);
  for (const auto &k : s.full_kraus()) out += k.adjoint() * obs * k;
  return out;
}

Matrix apply_descriptor(const cph::CommutingHamiltonian &h, const SteeringDescriptor &d, const Matrix &rho) {
  const auto &hj = h.term(d.j);
  const Eigen::Index dim = Eigen::Index(1) << h.n();
  if (rho.rows() != dim || rho.cols() != dim) throw std::invalid_argument("apply_descriptor: dimension mismatch");
  Matrix hr = pauli::left_apply(hj, rho);
  Matrix rh = pauli::right_apply(rho, hj);
  Matrix a = rho + pauli::right_apply(hr, hj);
  Matrix b = hr + rh;
  const double sg = d.sign;
  Matrix keep = 0.25 * (a + sg * b);
  Matrix flip = 0.25 * (a - sg * b);
  return keep + pauli::left_apply(d.v, pauli::right_apply(flip, d.v));
}

HeisenbergState initial_state(const cph::CommutingHamiltonian &h) {
  const std::size_t nt = h.num_terms(), dr = h.num_relations(), k = nt - dr;
  HeisenbergState s;
  s.A = h.A0();
  s.B = h.B0();
  s.P = BitMatrix(dr, k);
  s.M = BitMatrix::identity(k);
  s.p_dp = BitVector(nt);
  s.f = BitVector(k);
  return s;
}

BitMatrix update_factor(const cph::CommutingHamiltonian &h, const SteeringDescriptor &d) {
  const std::size_t k = h.num_generators();
  return BitMatrix::identity(k) + gf2::outer(h.A0().column(d.j), d.e);
}

HeisenbergState heisenberg_step(const cph::CommutingHamiltonian &h, const HeisenbergState &state,
                                const SteeringDescriptor &d) {
  if (d.j >= h.num_terms()) throw std::invalid_argument("heisenberg_step: term index out of range");
  if (d.e.size() != h.num_generators()) throw std::invalid_argument("heisenberg_step: coefficient length mismatch");
  BitMatrix mq = update_factor(h, d);
  BitMatrix nq = gf2::outer(h.B0().column(d.j), d.e);
  HeisenbergState s;
  s.P = nq + state.P * mq;
  s.M = state.M * mq;
  s.f = mq.left_multiply(state.f);
  if (d.sign < 0) s.f ^= d.e;
  s.A = s.M * h.A0();
  s.B = h.B0() + s.P * h.A0();
  s.p_dp = h.A0().left_multiply(s.f);
  s.step = state.step + 1;
  return s;
}

BitVector energy_vector(const cph::CommutingHamiltonian &h, const HeisenbergState &state) {
  return state.B.left_multiply(h.p_ph()) ^ state.p_dp;
}

std::string to_string(Mode m) { return m == Mode::exact ? "exact" : "symbolic"; }

Mode mode_from_string(const std::string &s) {
  if (s == "exact") return Mode::exact;
  if (s == "symbolic") return Mode::symbolic;
  throw std::invalid_argument("unknown mode '" + s + "' (expected exact or symbolic)");
}

double trace_distance(const Matrix &a, const Matrix &b) {
  auto es = ed::eigh(a - b, false);
  return 0.5 * es.values.cwiseAbs().sum();
}

ProtocolReport run_protocol(const cph::CommutingHamiltonian &h, const ProtocolOptions &opt) {
  const std::size_t nt = h.num_terms(), k = h.num_generators();
  const bool exact = opt.mode == Mode::exact;
  if (exact && h.n() > kExactQubitCap) {
    std::stringstream ss;
    ss << "run_protocol: exact mode supports at most " << kExactQubitCap << " qubits (got " << h.n()
       << "); use symbolic mode";
    throw std::invalid_argument(ss.str());
  }
  const std::size_t budget = opt.locality_budget ? opt.locality_budget : default_budget(h);
  std::mt19937_64 rng(opt.seed);

  ProtocolReport rep;
  HeisenbergState state = initial_state(h);
  Matrix rho, hfull, pgs;
  if (exact) {
    rho = opt.initial_rho ? *opt.initial_rho : random_pure_state(h.n(), rng);
    const Eigen::Index dim = Eigen::Index(1) << h.n();
    if (rho.rows() != dim || rho.cols() != dim) throw std::invalid_argument("run_protocol: initial_rho dimension mismatch");
    hfull = h.materialize();
    pgs = cph::ground_projector(h);
    if (opt.keep_states) rep.states.push_back(rho);
  }

  std::size_t rank_now = gf2::rank(state.M), stall = 0;
  bool fallback = false;
  std::optional<std::size_t> reached_at;
  rep.stop_reason = "max_steps";

  if (k == 0) {
    rep.stop_reason = "no_generators";
    rep.stage1_complete = true;
  }

  for (std::size_t step = 1; step <= opt.max_steps && k > 0; ++step) {
    StepRecord rec;
    rec.step = step;
    SteeringDescriptor d;
    if (!state.collapsed()) {
      rec.stage = 1;
      if (!fallback && stall >= 10 * k) {
        fallback = true;
        rep.fallback_used = true;
      }
      if (fallback) {
        // zero the columns of M one generator at a time
        std::size_t kk = 0;
        while (kk < k && state.M.column(kk).is_zero()) ++kk;
        d = make_descriptor(h, h.generators()[kk], (rng() & 1ULL) ? 1 : -1, BitVector::unit(k, kk), budget);
        rec.fallback = true;
      } else {
        std::vector<std::size_t> live;
        for (std::size_t j = 0; j < nt; ++j)
          if (!state.A.column(j).is_zero()) live.push_back(j);
        std::size_t j = live[rng() % live.size()];
        BitVector a0j = h.A0().column(j);
        BitVector e(k);
        for (std::size_t i = 0; i < k; ++i) e.set(i, rng() & 1ULL);
        if (!e.dot(a0j)) e.flip(a0j.first_one());
        d = make_descriptor(h, j, (rng() & 1ULL) ? 1 : -1, e, budget);
      }
      state = heisenberg_step(h, state, d);
      std::size_t r = gf2::rank(state.M);
      if (r < rank_now) {
        rank_now = r;
        stall = 0;
      } else {
        ++stall;
      }
      if (state.collapsed()) {
        rep.stage1_complete = true;
        rep.stage1_steps = step;
      }
    } else {
      rec.stage = 2;
      const BitVector v = energy_vector(h, state);
      BitVector e = random_nonzero(k, rng);
      BitVector g = h.A0().left_multiply(e);
      BitVector vn = v ^ g;
      const double ev = h.energy(v), en = h.energy(vn);
      const bool accept = en <= ev + 1e-12 * std::max(1.0, std::abs(ev));
      auto flip = construct_flip_operator(h, g, budget);
      // every j works once the sign absorbs x + y; prefer the most local superoperator
      std::vector<std::size_t> best;
      std::size_t best_support = SIZE_MAX;
      for (std::size_t j = 0; j < nt; ++j) {
        std::size_t s = union_support(h.term(j), flip.v).size();
        if (s < best_support) {
          best_support = s;
          best.clear();
        }
        if (s == best_support) best.push_back(j);
      }
      const std::size_t j = best[rng() % best.size()];
      const BitVector pa = state.P * h.A0().column(j);
      const bool x = h.p_ph().size() ? (h.B0().column(j) ^ pa).dot(h.p_ph()) : false;
      const bool y = state.f.dot(h.A0().column(j));
      if ((x ^ y) != v.get(j)) throw std::logic_error("run_protocol: energy vector bookkeeping mismatch");
      // coefficient of e A0 in the energy update is x + y + s
      const bool s = accept ^ x ^ y;
      d.j = j;
      d.sign = s ? -1 : 1;
      d.e = e;
      d.g = g;
      d.v = flip.v;
      d.local = flip.within_budget;
      rec.accepted = accept;
      state = heisenberg_step(h, state, d);
      if (energy_vector(h, state) != (accept ? vn : v))
        throw std::logic_error("run_protocol: stage-2 update did not follow the case table");
    }
    rec.j = d.j;
    rec.sign = d.sign;
    rec.support = union_support(h.term(d.j), d.v).size();
    if (!d.local) ++rep.nonlocal_steps;
    if (state.collapsed()) rec.energy = h.energy(energy_vector(h, state));
    if (exact) {
      Matrix next = apply_descriptor(h, d, rho);
      rec.trace_distance = trace_distance(next, rho);
      rho = std::move(next);
      rec.exact_energy = expectation_real(rho, hfull);
      rec.gs_population = expectation_real(rho, pgs);
      if (opt.keep_states) rep.states.push_back(rho);
    }
    rep.steps.push_back(rec);
    if (opt.target_energy && rec.energy && *rec.energy <= *opt.target_energy + 1e-9) {
      if (!reached_at) reached_at = step;
      if (step - *reached_at >= opt.steps_after_target) {
        rep.stop_reason = "target_energy";
        break;
      }
    }
  }
  rep.complete = rep.stage1_complete;
  rep.final_v = energy_vector(h, state);
  rep.final_energy = h.energy(rep.final_v);
  rep.state = state;
  if (exact) rep.final_rho = rho;
  return rep;
}

Matrix clifford_dilation(const cph::CommutingHamiltonian &h, const SteeringDescriptor &d) {
  auto s = make_superoperator(h, d);
  Matrix hl = pauli::materialize(restrict_to(h.term(d.j), s.support));
  Matrix vl = pauli::materialize(restrict_to(d.v, s.support));
  const Eigen::Index dim = hl.rows();
  Matrix id = Matrix::Identity(dim, dim);
  Matrix keep = 0.5 * (id + double(d.sign) * hl), other = 0.5 * (id - double(d.sign) * hl);
  Matrix u(2 * dim, 2 * dim);
  u.block(0, 0, dim, dim) = keep;
  u.block(0, dim, dim, dim) = other;
  u.block(dim, 0, dim, dim) = vl * other;
  u.block(dim, dim, dim, dim) = vl * keep;
  return u;
}

std::vector<Matrix> dilation_kraus(const Matrix &u) {
  const Eigen::Index dim = u.rows() / 2;
  return {u.block(0, 0, dim, dim), u.block(dim, 0, dim, dim)};
}

Superoperator alternative_superoperator(const cph::CommutingHamiltonian &h, std::size_t i) {
  const std::size_t n = h.n();
  if (i >= h.num_terms()) throw std::invalid_argument("alternative_superoperator: term index out of range");
  char a = 0;
  for (const auto &t : h.terms()) {
    auto sup = t.support();
    bool ok = sup.size() == 2 && t.letter(sup[0]) == t.letter(sup[1]) &&
              (sup[1] == sup[0] + 1 || (sup[0] == 0 && sup[1] == n - 1));
    if (ok && a == 0) a = t.letter(sup[0]);
    if (!ok || t.letter(sup[0]) != a)
      throw std::invalid_argument("alternative_superoperator: model is not a nearest-neighbour same-letter chain");
  }
  const char b = a == 'Z' ? 'X' : 'Z';
  const auto &hi = h.term(i);
  auto sup = hi.support();
  const bool wrap = !(sup[1] == sup[0] + 1);
  const std::size_t second = wrap ? sup[0] : sup[1];
  PauliOp v = PauliOp::single(n, second, b);
  std::string pp(n, 'I');
  pp[sup[0]] = b;
  pp[sup[1]] = b;
  PauliOp p = PauliOp::from_string(pp);

  Superoperator s;
  s.support = sup;
  s.num_qubits = n;
  Matrix hl = pauli::materialize(restrict_to(hi, sup));
  Matrix vl = pauli::materialize(restrict_to(v, sup));
  Matrix pl = pauli::materialize(restrict_to(p, sup));
  Matrix id = Matrix::Identity(hl.rows(), hl.cols());
  Matrix pi = 0.5 * (id - hl);
  s.kraus.push_back(pi);
  s.kraus.push_back(pi * vl * (0.5 * (id - pl)));
  s.kraus.push_back(pi * vl * (0.5 * (id + pl)));
  double err = s.cptp_error();
  if (err > kCptpTol) throw std::logic_error("alternative_superoperator: CPTP check failed");
  return s;
}

HeatingReport heating_recovery_check(const cph::CommutingHamiltonian &h, const PauliOp &error, std::uint64_t seed) {
  if (error.n() != h.n()) throw std::invalid_argument("heating_recovery_check: error acts on the wrong number of qubits");
  HeatingReport rep;
  rep.error = error;
  auto gs = cph::ground_energy_search(h, 1ULL << 22, seed);
  ProtocolOptions opt;
  opt.seed = seed;
  opt.mode = Mode::exact;
  opt.max_steps = 100000;
  opt.target_energy = gs.energy;
  auto run = run_protocol(h, opt);
  const Matrix &rho = run.final_rho;

  std::vector<Matrix> terms;
  for (const auto &t : h.terms()) terms.push_back(pauli::materialize(t));
  auto expect_all = [&terms](const Matrix &r) {
    std::vector<double> out;
    for (const auto &t : terms) out.push_back(expectation_real(r, t));
    return out;
  };
  rep.before = expect_all(rho);
  Matrix err = pauli::left_apply(error, pauli::right_apply(rho, error.adjoint()));
  rep.after_error = expect_all(err);

  BitVector gk = pattern_of(h, error);
  Matrix fixed = err;
  if (!gk.is_zero()) {
    const std::size_t i = gk.first_one();
    // coordinates of gk in the A0 basis are its generator entries
    BitVector e(h.num_generators());
    for (std::size_t kk = 0; kk < e.size(); ++kk) e.set(kk, gk.get(h.generators()[kk]));
    SteeringDescriptor d = make_descriptor(h, i, rep.before[i] >= 0 ? 1 : -1, e);
    fixed = apply_descriptor(h, d, err);
    rep.correction = d;
  }
  rep.after_correction = expect_all(fixed);
  for (std::size_t j = 0; j < terms.size(); ++j)
    rep.max_deviation = std::max(rep.max_deviation, std::abs(rep.after_correction[j] - rep.before[j]));
  rep.restored = rep.max_deviation <= 1e-9;
  return rep;
}

}  // namespace steerkit::steering
