#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "steerkit/glassfloor.hpp"
#include "steerkit/models.hpp"

using namespace steerkit;
using namespace steerkit::glassfloor;
using analysis::make_region;

namespace {

Vector ghz(std::size_t n) {
  Vector v = Vector::Zero(Eigen::Index(1) << n);
  v[0] = v[v.size() - 1] = 1 / std::sqrt(2.0);
  return v;
}

std::vector<Region> singles(std::size_t n) { return analysis::subsets(n, 1); }

models::ModelSpec heisenberg(std::size_t n) {
  models::ModelSpec s;
  s.kind = models::Kind::heisenberg_chain;
  s.n = n;
  return s;
}

models::ModelSpec syk(std::size_t n, std::uint64_t seed) {
  models::ModelSpec s;
  s.kind = models::Kind::syk_dirac;
  s.n = n;
  s.seed = seed;
  return s;
}

}  // namespace

TEST(ComputeP, GhzSingleQubitIsHalf) {
  for (std::size_t n = 3; n <= 8; ++n) {
    auto pr = compute_p(ghz(n), ed::Basis::spins(n, 2), singles(n));
    EXPECT_NEAR(pr.p, 0.5, 1e-12);
    EXPECT_EQ(pr.table.size(), n);
  }
}

TEST(ComputeP, FerroManifoldIsZero) {
  models::ModelSpec s;
  s.kind = models::Kind::ising_chain;
  s.n = 5;
  s.sign = -1;
  auto rep = run_glass_floor(s, parse_region_family("windows:2"));
  EXPECT_EQ(rep.p, 0.0);
  EXPECT_EQ(rep.temperature.t, 0.0);
  EXPECT_EQ(rep.fidelity_bound, 1.0);
}

TEST(ComputeP, BasisColumnsBoundTheManifoldMinimum) {
  auto sys = prepare_system(heisenberg(3));
  ASSERT_EQ(sys.degeneracy, 4u);
  auto pr = compute_p(sys.states, sys.basis, analysis::windows(3, 2, true));
  for (auto &row : pr.table) EXPECT_LE(row.p, row.basis_p + 1e-12);
}

TEST(ComputeP, SykTwoModeRegionsAtMostQuarter) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto rep = run_glass_floor(syk(6, seed), parse_region_family("subsets:2"));
    EXPECT_LE(rep.p, 0.25 + 1e-12);
    EXPECT_GE(rep.p, 0.0);
  }
}

TEST(ComputeP, HalfPlusOneRegionsAreRankDeficient) {
  // a region larger than its complement has a rank-deficient RDM
  auto rep = run_glass_floor(heisenberg(6), parse_region_family("half+1"));
  EXPECT_LT(rep.p, 1e-12);
}

TEST(ComputeP, CrossCheckMatchesOneMinusP) {
  for (std::size_t n : {4u, 5u, 6u}) {
    auto sys = prepare_system(heisenberg(n));
    auto rep = run_glass_floor(sys, analysis::windows(n, 2, true));
    ASSERT_GE(rep.cross_check, 0);
    EXPECT_NEAR(rep.cross_check, 1 - rep.p, 1e-8) << n;
  }
}

TEST(ComputeP, LargerRegionsNeverIncreaseP) {
  auto sys = prepare_system(heisenberg(6));
  std::vector<Region> regions;
  for (std::size_t m = 1; m <= 3; ++m)
    for (auto &r : analysis::windows(6, m, true)) regions.push_back(r);
  auto rep = run_glass_floor(sys, regions);
  EXPECT_TRUE(rep.region_monotone);
}

TEST(Surrogate, GhzDropsOneBranch) {
  for (std::size_t n = 3; n <= 6; ++n) {
    auto s = presumed_surrogate(ghz(n), ed::Basis::spins(n, 2), make_region({0}, n));
    EXPECT_TRUE(s.tie_broken);
    EXPECT_FALSE(s.rank_deficient);
    // tie-break keeps the lowest basis index: the surrogate is |00...0>
    EXPECT_NEAR(std::abs(s.state[0]), 1, 1e-12);
    EXPECT_NEAR(s.fidelity, 0.5, 1e-12);
    EXPECT_NEAR(s.rdm_fidelity, 0.5, 1e-10);
  }
}

TEST(Surrogate, ProductStateFlagged) {
  Vector psi = Vector::Zero(8);
  psi[3] = 1;
  auto s = presumed_surrogate(psi, ed::Basis::spins(3, 2), make_region({1}, 3));
  EXPECT_TRUE(s.rank_deficient);
  EXPECT_EQ(s.fidelity, 1.0);
  EXPECT_NEAR((s.state - psi).norm(), 0, 0);
}

TEST(Surrogate, ChiralTriangleState) {
  // (|001> + w|010> + w^2|100>)/sqrt3 is a ground state of the spin-1/2 triangle; site 0
  // carries weight 1/3 on |1>, so the surrogate drops |100>
  const cplx w = std::polar(1.0, 2 * M_PI / 3);
  Vector psi = Vector::Zero(8);
  psi[1] = 1;
  psi[2] = w;
  psi[4] = w * w;
  psi /= std::sqrt(3.0);
  auto sys = prepare_system(heisenberg(3));
  Matrix proj = sys.states * sys.states.adjoint();
  ASSERT_NEAR((proj * psi - psi).norm(), 0, 1e-10);
  auto s = presumed_surrogate(psi, sys.basis, make_region({0}, 3));
  EXPECT_NEAR(s.removed, 1.0 / 3, 1e-12);
  EXPECT_NEAR(s.fidelity, 2.0 / 3, 1e-12);
  EXPECT_NEAR(s.rdm_fidelity, 2.0 / 3, 1e-10);
  Vector expect = Vector::Zero(8);
  expect[1] = 1 / std::sqrt(2.0);
  expect[2] = w / std::sqrt(2.0);
  EXPECT_NEAR(std::abs(expect.dot(s.state)), 1, 1e-12);
}

TEST(Surrogate, FidelityIsOneMinusSmallestEigenvalue) {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 10; ++trial) {
    Vector psi(32);
    for (auto &x : psi) x = cplx(g(rng), g(rng));
    psi.normalize();
    auto basis = ed::Basis::spins(5, 2);
    Region r = make_region({1, 2}, 5);
    auto s = presumed_surrogate(psi, basis, r);
    const double smallest = analysis::partial_trace(psi, basis, r).smallest;
    EXPECT_NEAR(s.fidelity, 1 - smallest, 1e-10);
    EXPECT_NEAR(s.rdm_fidelity, 1 - smallest, 1e-8);
  }
}

TEST(EnergyFloor, Substitution) {
  EXPECT_EQ(energy_floor(-2.0, 1.0, 0.0).bound, -2.0);
  EXPECT_NEAR(energy_floor(0.0, 1.0, 0.25).bound, 0.25, 1e-15);
  EXPECT_NEAR(energy_floor(-1.0, 2.0, 0.25).normalized, 0.25, 1e-15);
  EXPECT_THROW(energy_floor(0, 1, 1.5), std::invalid_argument);
}

TEST(EnergyFloor, HeisenbergFiveMatchesReport) {
  auto rep = run_glass_floor(heisenberg(5), parse_region_family("windows:2"));
  EXPECT_NEAR(rep.energy_bound, rep.e_gs + rep.p * rep.gap, 1e-12);
  EXPECT_GT(rep.energy_bound, rep.e_gs);
}

TEST(TemperatureFloor, TwoLevelClosedForm) {
  std::vector<Level> spec = {{0, 1}, {1, 1}};
  auto t = temperature_floor(spec, 1, 0, 0.25);
  EXPECT_NEAR(t.beta, std::log(3.0), 1e-9);
  EXPECT_NEAR(t.t, 1 / std::log(3.0), 1e-9);
  EXPECT_NEAR(t.t, 0.91024, 1e-5);
  EXPECT_LT(t.residual, 1e-12);
}

TEST(TemperatureFloor, ZeroAndInfiniteSentinels) {
  std::vector<Level> spec = {{0, 1}, {1, 3}};
  EXPECT_EQ(temperature_floor(spec, 1, 0, 0).t, 0.0);
  // beta = 0 gives ground weight 1/4
  auto inf = temperature_floor(spec, 1, 0, 0.8);
  EXPECT_TRUE(inf.infinite);
  EXPECT_TRUE(std::isinf(inf.t));
  EXPECT_FALSE(temperature_floor(spec, 1, 0, 0.7).infinite);
  EXPECT_THROW(temperature_floor(spec, 1, 0, -0.1), std::invalid_argument);
}

TEST(TemperatureFloor, DegenerateGround) {
  // ground deg 2 at 0, excited deg 2 at 1: weight 1/(1+e^{-beta})
  std::vector<Level> spec = {{0, 2}, {1, 2}};
  auto t = temperature_floor(spec, 2, 0, 0.25);
  EXPECT_NEAR(t.beta, std::log(3.0), 1e-9);
}

TEST(TemperatureFloor, MonotoneInP) {
  std::vector<Level> spec = levels_from_values({-3, -1, -1, 0, 0.5, 2, 2, 2});
  double prev = 0;
  for (int i = 1; i <= 20; ++i) {
    const double p = 0.7 * i / 20.0;
    auto t = temperature_floor(spec, 1, -3, p);
    EXPECT_GE(t.t, prev);
    prev = t.t;
  }
}

TEST(TemperatureFloor, WeightAtRootMatchesTarget) {
  auto sys = prepare_system(heisenberg(6));
  auto t = temperature_floor(sys.spectrum, double(sys.degeneracy), sys.energy, 0.1);
  EXPECT_NEAR(ground_weight(sys.spectrum, double(sys.degeneracy), sys.energy, t.beta), 0.9, 1e-10);
}

TEST(Levels, MergeWithinTolerance) {
  auto lv = levels_from_values({1.0, 0.0, 1.0 + 1e-12, 2.0});
  ASSERT_EQ(lv.size(), 3u);
  EXPECT_EQ(lv[1].multiplicity, 2.0);
}

TEST(Systems, HeisenbergThree) {
  auto sys = prepare_system(heisenberg(3));
  EXPECT_NEAR(sys.energy, -0.75, 1e-9);
  EXPECT_EQ(sys.degeneracy, 4u);
  EXPECT_NEAR(sys.gap, 1.5, 1e-9);
  double total = 0;
  for (auto &l : sys.spectrum) total += l.multiplicity;
  EXPECT_EQ(total, 8.0);
}

TEST(Systems, SykDefaultsToHalfFillingSector) {
  auto sys = prepare_system(syk(6, 1));
  EXPECT_EQ(sys.ensemble, Ensemble::canonical_sector);
  EXPECT_EQ(sys.basis.dim(), 20u);
  EXPECT_TRUE(sys.fermionic);
}

TEST(Systems, GrandCanonicalIncludesAllSectors) {
  auto sys = prepare_system(syk(5, 3), Ensemble::grand_canonical);
  double total = 0;
  for (auto &l : sys.spectrum) total += l.multiplicity;
  EXPECT_EQ(total, 32.0);
  // the canonical ground state stays the lowest level of E - mu N
  EXPECT_LE(sys.ground_energy_in_ensemble, sys.spectrum.front().energy + 1e-9);
  auto rep = run_glass_floor(sys, analysis::subsets(5, 2));
  EXPECT_GE(rep.temperature.t, 0);
}

TEST(Systems, SpinModelsRejectSectorEnsembles) {
  EXPECT_THROW(prepare_system(heisenberg(4), Ensemble::grand_canonical), std::invalid_argument);
}

TEST(Systems, HubbardSmallLattice) {
  models::ModelSpec s;
  s.kind = models::Kind::fermi_hubbard;
  s.lx = 2;
  s.ly = 2;
  s.u = 4;
  auto sys = prepare_system(s);
  EXPECT_EQ(sys.basis.dim(), 36u);
  auto rep = run_glass_floor(sys, hubbard_regions(2, 2));
  EXPECT_GE(rep.p, 0);
  EXPECT_LE(rep.p, 1);
}

TEST(Regions, FamilyParsing) {
  EXPECT_EQ(parse_region_family("windows:3").m, 3u);
  EXPECT_EQ(parse_region_family("subsets:2").kind, FamilyKind::subsets);
  EXPECT_EQ(to_string(parse_region_family("half+1")), "half+1");
  EXPECT_THROW(parse_region_family("windows:x"), std::invalid_argument);
  EXPECT_THROW(parse_region_family("blocks"), std::invalid_argument);
}

TEST(Regions, HubbardRepresentatives) {
  auto r = hubbard_regions(3, 3);
  // on-site pair, then per spin: two bonds, two lines, one plaquette
  EXPECT_EQ(r.size(), 11u);
  EXPECT_EQ(r.front().sites, (std::vector<std::size_t>{0, 9}));
  EXPECT_EQ(r.back().sites, (std::vector<std::size_t>{9, 10, 12, 13}));
}

TEST(Ensembles, NamesRoundTrip) {
  for (auto e : {Ensemble::canonical_full, Ensemble::canonical_sector, Ensemble::grand_canonical})
    EXPECT_EQ(ensemble_from_string(to_string(e)), e);
  EXPECT_THROW(ensemble_from_string("micro"), std::invalid_argument);
}
