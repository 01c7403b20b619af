#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "steerkit/cph.hpp"
#include "steerkit/models.hpp"
#include "steerkit/steering.hpp"

using namespace steerkit;
using namespace steerkit::steering;
using gf2::BitMatrix;
using gf2::BitVector;
using pauli::PauliOp;

namespace {

cph::CommutingHamiltonian triangle() { return models::build_ising(3, 1); }

Matrix product_state(const std::vector<Vector> &qubits) {
  Vector psi = qubits[0];
  for (std::size_t i = 1; i < qubits.size(); ++i) {
    Vector next(psi.size() * 2);
    for (Eigen::Index a = 0; a < psi.size(); ++a)
      for (Eigen::Index b = 0; b < 2; ++b) next[2 * a + b] = psi[a] * qubits[i][b];
    psi = next;
  }
  return psi * psi.adjoint();
}

BitVector random_bits(std::size_t len, std::mt19937_64 &rng) {
  BitVector v(len);
  for (std::size_t i = 0; i < len; ++i) v.set(i, rng() & 1ULL);
  return v;
}

}  // namespace

TEST(FlipOperator, TriangleSharedSpin) {
  auto h = triangle();
  auto f = construct_flip_operator(h, BitVector::from_string("110"), 2);
  EXPECT_EQ(f.v.to_string(), "+IXI");
  EXPECT_EQ(f.support, 1u);
  EXPECT_TRUE(f.within_budget);
}

TEST(FlipOperator, ZeroPatternIsIdentity) {
  auto f = construct_flip_operator(triangle(), BitVector(3), 2);
  EXPECT_TRUE(f.v.is_identity());
  EXPECT_EQ(f.support, 0u);
}

TEST(FlipOperator, OddPatternFaults) {
  EXPECT_THROW(construct_flip_operator(triangle(), BitVector::from_string("100"), 2), std::invalid_argument);
  EXPECT_THROW(construct_flip_operator(triangle(), BitVector::from_string("111"), 2), std::invalid_argument);
}

TEST(FlipOperator, RandomPatternsRealized) {
  std::mt19937_64 rng(42);
  for (std::uint64_t trial = 0; trial < 40; ++trial) {
    auto h = cph::CommutingHamiltonian::build(cph::random_commuting_terms(2 + trial % 5, 3 + trial % 6, trial));
    for (int k = 0; k < 10; ++k) {
      BitVector e = random_bits(h.num_generators(), rng);
      BitVector g = h.A0().left_multiply(e);
      auto f = construct_flip_operator(h, g, h.n());
      EXPECT_EQ(pattern_of(h, f.v), g);
      EXPECT_TRUE(f.v.is_hermitian());
    }
  }
}

TEST(FlipOperator, BudgetAdvisory) {
  // flipping terms 0 and 2 of an open ferro chain needs two qubits of support
  auto h = models::build_ising(6, -1, models::Boundary::open);
  auto f = construct_flip_operator(h, BitVector::from_string("10100"), 1);
  EXPECT_EQ(f.support, 2u);
  EXPECT_FALSE(f.within_budget);
  EXPECT_EQ(pattern_of(h, f.v), BitVector::from_string("10100"));
}

TEST(Superoperator, OwnTermCooledOrHeated) {
  auto h = models::build_ising(5, 1);
  Matrix id = Matrix::Identity(32, 32);
  for (std::size_t j = 0; j < h.num_terms(); ++j) {
    BitVector e(h.num_generators());
    // any e with g_j = 1
    std::mt19937_64 rng(j);
    do e = random_bits(h.num_generators(), rng);
    while (!h.A0().left_multiply(e).get(j));
    auto dm = make_descriptor(h, j, -1, e);
    auto dp = make_descriptor(h, j, +1, e);
    Matrix hj = pauli::materialize(h.term(j));
    auto sm = make_superoperator(h, dm), sp = make_superoperator(h, dp);
    EXPECT_LT(sm.cptp_error(), kCptpTol);
    EXPECT_LT((adjoint(sm, hj) + id).norm(), 1e-12);
    EXPECT_LT((adjoint(sp, hj) - id).norm(), 1e-12);
  }
}

TEST(Superoperator, HeisenbergSignLaw) {
  // P_s^dag(H^(i)) = (s H^(j))^{g_i} H^(i)
  std::mt19937_64 rng(3);
  for (std::uint64_t trial = 0; trial < 30; ++trial) {
    auto h = cph::CommutingHamiltonian::build(cph::random_commuting_terms(3 + trial % 3, 4 + trial % 4, 100 + trial));
    if (h.num_generators() == 0) continue;
    BitVector e = random_bits(h.num_generators(), rng);
    std::size_t j = rng() % h.num_terms();
    int sign = (rng() & 1) ? 1 : -1;
    auto d = make_descriptor(h, j, sign, e, h.n());
    auto s = make_superoperator(h, d);
    Matrix hj = pauli::materialize(h.term(j));
    for (std::size_t i = 0; i < h.num_terms(); ++i) {
      Matrix hi = pauli::materialize(h.term(i));
      Matrix expect = d.g.get(i) ? Matrix(double(sign) * hj * hi) : hi;
      EXPECT_LT((adjoint(s, hi) - expect).norm(), 1e-12);
    }
  }
}

TEST(Superoperator, CommutingVLeavesTermsFixed) {
  auto h = triangle();
  auto d = make_descriptor(h, 0, -1, BitVector(h.num_generators()));
  EXPECT_TRUE(d.v.is_identity());
  auto s = make_superoperator(h, d);
  for (std::size_t i = 0; i < 3; ++i) {
    Matrix hi = pauli::materialize(h.term(i));
    EXPECT_LT((adjoint(s, hi) - hi).norm(), 1e-12);
  }
}

TEST(Superoperator, ApplyTrianglePlusState) {
  auto h = triangle();
  // V = X on the first qubit anticommutes with Z0 Z1 and Z2 Z0
  BitVector g = pattern_of(h, PauliOp::from_string("XII"));
  auto f = construct_flip_operator(h, g, 3);
  SteeringDescriptor d;
  d.j = 0;
  d.sign = -1;
  d.g = g;
  d.v = PauliOp::from_string("XII");
  d.e = BitVector(h.num_generators());
  for (std::size_t k = 0; k < d.e.size(); ++k) d.e.set(k, g.get(h.generators()[k]));
  EXPECT_EQ(h.A0().left_multiply(d.e), g);
  (void)f;
  Vector plus(2);
  plus << 1 / std::sqrt(2.0), 1 / std::sqrt(2.0);
  Matrix rho = product_state({plus, plus, plus});
  auto s = make_superoperator(h, d);
  Matrix out = steering::apply(s, rho);
  // oracle: Kraus pair built directly from 8x8 matrices
  Matrix z0z1 = pauli::materialize(PauliOp::from_string("ZZI"));
  Matrix x0 = pauli::materialize(PauliOp::from_string("XII"));
  Matrix id = Matrix::Identity(8, 8);
  Matrix k0 = 0.5 * (id - z0z1), k1 = x0 * 0.5 * (id + z0z1);
  Matrix oracle = k0 * rho * k0.adjoint() + k1 * rho * k1.adjoint();
  EXPECT_LT((out - oracle).norm(), 1e-12);
  EXPECT_LT((apply_descriptor(h, d, rho) - oracle).norm(), 1e-12);
  // both branches land on (|01> + |10>)/sqrt2 (x) |+>
  Vector bell(4);
  bell << 0, 1 / std::sqrt(2.0), 1 / std::sqrt(2.0), 0;
  Vector psi(8);
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 2; ++b) psi[2 * a + b] = bell[a] * plus[b];
  EXPECT_LT((out - psi * psi.adjoint()).norm(), 1e-12);
  EXPECT_NEAR(out.trace().real(), 1.0, 1e-12);
}

TEST(Superoperator, FixedStatesUnchanged) {
  auto h = triangle();
  // V commuting with H^(1) makes the map unital
  for (const char *bits : {"01", "10", "11"}) {
    auto d = make_descriptor(h, 1, -1, BitVector::from_string(bits));
    if (d.g.get(1)) continue;
    auto s = make_superoperator(h, d);
    Matrix mixed = Matrix::Identity(8, 8) / 8.0;
    EXPECT_LT((steering::apply(s, mixed) - mixed).norm(), 1e-12);
  }
  BitVector e = BitVector::from_string("11");
  auto d = make_descriptor(h, 1, -1, e);
  auto s = make_superoperator(h, d);
  // a state inside the kept subspace of H^(1)
  Vector psi = Vector::Zero(8);
  psi[2] = 1;  // |010>: Z1 Z2 = -1
  Matrix rho = psi * psi.adjoint();
  EXPECT_LT((steering::apply(s, rho) - rho).norm(), 1e-12);
}

TEST(Superoperator, DimensionMismatchFaults) {
  auto h = triangle();
  auto s = make_superoperator(h, make_descriptor(h, 0, -1, BitVector::from_string("10")));
  EXPECT_THROW(steering::apply(s, Matrix::Identity(4, 4)), std::invalid_argument);
}

TEST(Heisenberg, ZeroCoefficientsNoChange) {
  auto h = models::build_ising(5, 1);
  auto s0 = initial_state(h);
  auto s1 = heisenberg_step(h, s0, make_descriptor(h, 2, -1, BitVector(h.num_generators())));
  EXPECT_EQ(s1.A, s0.A);
  EXPECT_EQ(s1.B, s0.B);
  EXPECT_EQ(s1.p_dp, s0.p_dp);
}

TEST(Heisenberg, TriangleCollapsesInTwoSteps) {
  auto h = triangle();
  auto s = initial_state(h);
  ASSERT_EQ(h.num_generators(), 2u);
  for (std::size_t k = 0; k < 2; ++k) {
    auto d = make_descriptor(h, h.generators()[k], -1, BitVector::unit(2, k));
    EXPECT_EQ(gf2::rank(update_factor(h, d)), 1u);
    s = heisenberg_step(h, s, d);
  }
  EXPECT_TRUE(s.collapsed());
  // both steps cool: generators end at -1, the pivot term follows from the relation
  auto v = energy_vector(h, s);
  EXPECT_TRUE(h.feasible(v));
}

TEST(Heisenberg, UpdateFactorRank) {
  auto h = models::build_ising(7, 1);
  std::mt19937_64 rng(9);
  const std::size_t k = h.num_generators();
  for (int t = 0; t < 50; ++t) {
    std::size_t j = rng() % h.num_terms();
    BitVector e = random_bits(k, rng);
    if (e.is_zero()) continue;
    auto d = make_descriptor(h, j, -1, e, h.n());
    std::size_t r = gf2::rank(update_factor(h, d));
    EXPECT_EQ(r, d.g.get(j) ? k - 1 : k);
  }
}

TEST(Heisenberg, SymbolicMatchesExactAfterCollapse) {
  std::mt19937_64 rng(17);
  for (std::uint64_t trial = 0; trial < 20; ++trial) {
    auto h = cph::CommutingHamiltonian::build(cph::random_commuting_terms(2 + trial % 4, 3 + trial % 5, 500 + trial));
    ProtocolOptions opt;
    opt.seed = trial;
    opt.mode = Mode::exact;
    opt.max_steps = 60;
    auto rep = run_protocol(h, opt);
    ASSERT_TRUE(rep.stage1_complete);
    for (const auto &r : rep.steps)
      if (r.energy) EXPECT_NEAR(*r.energy, *r.exact_energy, 1e-9);
    for (std::size_t i = 0; i < h.num_terms(); ++i) {
      double expect = rep.final_v.get(i) ? -1.0 : 1.0;
      double got = (rep.final_rho * pauli::materialize(h.term(i))).trace().real();
      EXPECT_NEAR(got, expect, 1e-9);
    }
  }
}

TEST(Protocol, AfmTriangleExact) {
  auto h = triangle();
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    ProtocolOptions opt;
    opt.seed = seed;
    opt.mode = Mode::exact;
    opt.max_steps = 2000;
    opt.target_energy = -1.0;
    auto rep = run_protocol(h, opt);
    EXPECT_EQ(rep.stop_reason, "target_energy");
    EXPECT_NEAR(rep.final_energy, -1.0, 1e-12);
    EXPECT_GE(*rep.steps.back().gs_population, 1 - 1e-6);
  }
}

TEST(Protocol, FerroRingStationary) {
  auto h = models::build_ising(4, -1);
  ProtocolOptions opt;
  opt.seed = 5;
  opt.mode = Mode::exact;
  opt.max_steps = 2000;
  opt.target_energy = -4.0;
  opt.steps_after_target = 20;
  opt.keep_states = true;
  auto rep = run_protocol(h, opt);
  EXPECT_NEAR(rep.final_energy, -4.0, 1e-12);
  // frustration-free endpoint: all later states equal
  const std::size_t last = rep.states.size() - 1;
  for (std::size_t k = last - 20; k < last; ++k) EXPECT_LT(trace_distance(rep.states[k], rep.states[k + 1]), 1e-9);
}

TEST(Protocol, AfmFiveSymbolic) {
  auto h = models::build_ising(5, 1);
  ProtocolOptions opt;
  opt.seed = 11;
  opt.max_steps = 500;
  auto rep = run_protocol(h, opt);
  EXPECT_TRUE(rep.complete);
  EXPECT_EQ(rep.final_v.weight(), 4u);
  EXPECT_NEAR(rep.final_energy, -3.0, 1e-12);
}

TEST(Protocol, StageTwoMonotone) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    auto h = cph::CommutingHamiltonian::build(cph::random_commuting_terms(6, 9, 77 + seed));
    ProtocolOptions opt;
    opt.seed = seed;
    opt.max_steps = 300;
    auto rep = run_protocol(h, opt);
    std::optional<double> prev;
    for (const auto &r : rep.steps) {
      if (r.stage != 2) continue;
      if (prev) EXPECT_LE(*r.energy, *prev + 1e-12);
      prev = r.energy;
    }
  }
}

TEST(Protocol, IncompleteFlag) {
  auto h = models::build_ising(7, 1);
  ProtocolOptions opt;
  opt.max_steps = 1;
  auto rep = run_protocol(h, opt);
  EXPECT_FALSE(rep.complete);
  EXPECT_EQ(rep.stop_reason, "max_steps");
}

TEST(Protocol, ExactModeCap) {
  auto h = models::build_ising(12, 1);
  ProtocolOptions opt;
  opt.mode = Mode::exact;
  EXPECT_THROW(run_protocol(h, opt), std::invalid_argument);
}

TEST(Dilation, ZZTermEightByEight) {
  auto h = cph::CommutingHamiltonian::build(std::vector<PauliOp>{PauliOp::from_string("ZZ")});
  auto d = make_descriptor(h, 0, -1, BitVector::from_string("1"));
  Matrix u = clifford_dilation(h, d);
  EXPECT_EQ(u.rows(), 8);
  EXPECT_LT((u * u.adjoint() - Matrix::Identity(8, 8)).norm(), 1e-12);
  auto s = make_superoperator(h, d);
  auto k = dilation_kraus(u);
  EXPECT_LT((k[0] - s.kraus[0]).norm(), 1e-10);
  EXPECT_LT((k[1] - s.kraus[1]).norm(), 1e-10);
  // <0|U|0> = (1 - H)/2 and <1|U|0> = (1 - H)/2 V
  Matrix hz = pauli::materialize(PauliOp::from_string("ZZ"));
  Matrix v = pauli::materialize(d.v);
  Matrix pm = 0.5 * (Matrix::Identity(4, 4) - hz);
  EXPECT_LT((k[0] - pm).norm(), 1e-12);
  EXPECT_LT((k[1] - pm * v).norm(), 1e-12);
}

TEST(Dilation, IdentityDescriptor) {
  auto h = triangle();
  auto d = make_descriptor(h, 0, 1, BitVector(2));
  Matrix u = clifford_dilation(h, d);
  EXPECT_LT((u * u.adjoint() - Matrix::Identity(u.rows(), u.cols())).norm(), 1e-12);
  auto k = dilation_kraus(u);
  // projective relabeling: K0 + K1 = 1
  EXPECT_LT((k[0] + k[1] - Matrix::Identity(k[0].rows(), k[0].cols())).norm(), 1e-12);
}

TEST(Dilation, RandomDescriptors) {
  std::mt19937_64 rng(8);
  for (std::uint64_t t = 0; t < 50; ++t) {
    auto h = cph::CommutingHamiltonian::build(cph::random_commuting_terms(2 + t % 4, 3 + t % 4, 900 + t));
    if (h.num_generators() == 0) continue;
    auto d = make_descriptor(h, rng() % h.num_terms(), (rng() & 1) ? 1 : -1, random_bits(h.num_generators(), rng), h.n());
    Matrix u = clifford_dilation(h, d);
    EXPECT_LT((u * u.adjoint() - Matrix::Identity(u.rows(), u.cols())).norm(), 1e-12);
    auto s = make_superoperator(h, d);
    auto k = dilation_kraus(u);
    EXPECT_LT((k[0] - s.kraus[0]).norm(), 1e-10);
    EXPECT_LT((k[1] - s.kraus[1]).norm(), 1e-10);
  }
}

TEST(Alternative, ParityAndOwnTerm) {
  auto h = models::build_ising(3, 1, models::Boundary::periodic, 'X');
  auto s = alternative_superoperator(h, 0);
  EXPECT_LT(s.cptp_error(), kCptpTol);
  Matrix zzz = pauli::materialize(PauliOp::from_string("ZZZ"));
  EXPECT_LT((adjoint(s, zzz) - zzz).norm(), 1e-12);
  Matrix h0 = pauli::materialize(h.term(0));
  EXPECT_LT((adjoint(s, h0) + Matrix::Identity(8, 8)).norm(), 1e-12);
  // neighbouring term: (X1 - X0)/2 X2
  Matrix h1 = pauli::materialize(PauliOp::from_string("IXX"));
  Matrix expect = 0.5 * (h1 - pauli::materialize(PauliOp::from_string("XIX")));
  EXPECT_LT((adjoint(s, h1) - expect).norm(), 1e-12);
}

TEST(Alternative, RejectsOtherModels) {
  auto h = cph::CommutingHamiltonian::build(std::vector<PauliOp>{PauliOp::from_string("ZIZI"), PauliOp::from_string("IZZI")});
  EXPECT_THROW(alternative_superoperator(h, 0), std::invalid_argument);
}

TEST(Heating, SingleQubitErrorsRestored) {
  auto h = models::build_ising(5, 1);
  for (std::size_t q = 0; q < 5; ++q)
    for (char l : {'X', 'Y', 'Z'}) {
      auto rep = heating_recovery_check(h, PauliOp::single(5, q, l), 3 + q);
      EXPECT_TRUE(rep.restored) << l << q << " deviation " << rep.max_deviation;
      if (l == 'Z') EXPECT_FALSE(rep.correction.has_value());
    }
}

TEST(Heating, SymbolicLaw) {
  // K P^dag(H^(j)) K = +-H^(i) H^(j) for j in the error's pattern
  auto h = models::build_ising(5, 1);
  PauliOp k = PauliOp::single(5, 2, 'X');
  BitVector gk = pattern_of(h, k);
  BitVector e(h.num_generators());
  for (std::size_t kk = 0; kk < e.size(); ++kk) e.set(kk, gk.get(h.generators()[kk]));
  const std::size_t i = gk.first_one();
  auto s = make_superoperator(h, make_descriptor(h, i, -1, e));
  Matrix km = pauli::materialize(k);
  Matrix hi = pauli::materialize(h.term(i));
  for (std::size_t j = 0; j < h.num_terms(); ++j) {
    if (!gk.get(j)) continue;
    Matrix hj = pauli::materialize(h.term(j));
    Matrix got = km * adjoint(s, hj) * km;
    EXPECT_LT((got + hi * hj).norm(), 1e-12);
  }
}
