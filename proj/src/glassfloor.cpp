#include "steerkit/glassfloor.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>
#include <boost/math/tools/toms748_solve.hpp>

#include "steerkit/fermion.hpp"

namespace steerkit::glassfloor {

using analysis::Bipartition;

namespace {

constexpr Eigen::Index kFullOverlapCap = 1024;
constexpr std::size_t kBlockThreshold = 4000;  // sector size above which lattice momentum is used

Eigen::SelfAdjointEigenSolver<Matrix> eig(const Matrix &m) {
  return Eigen::SelfAdjointEigenSolver<Matrix>(0.5 * (m + m.adjoint()));
}

Matrix psd_sqrt(const Matrix &m) {
  auto es = eig(m);
  // roundoff-level eigenvalues would otherwise enter as sqrt(eps)
  const double floor = 1e-13 * std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff());
  Eigen::VectorXd s = es.eigenvalues().unaryExpr([&](double x) { return x > floor ? std::sqrt(x) : 0.0; });
  return es.eigenvectors() * s.asDiagonal() * es.eigenvectors().adjoint();
}

std::vector<double> to_vector(const Eigen::VectorXd &v) { return {v.data(), v.data() + v.size()}; }

std::size_t num_sites(const models::ModelSpec &spec) {
  switch (spec.kind) {
    case models::Kind::fermi_hubbard: return 2 * spec.lx * spec.ly;
    case models::Kind::commuting_pauli_custom: return spec.terms.at(0).op.n();
    default: return spec.n;
  }
}

bool fermionic(const models::ModelSpec &spec) {
  return spec.kind == models::Kind::syk_dirac || spec.kind == models::Kind::syk_majorana ||
         spec.kind == models::Kind::fermi_hubbard;
}

void fill_ground(System &sys, const ed::Eigensystem &es) {
  auto gm = ed::ground_manifold(es);
  sys.energy = gm.energy;
  sys.gap = gm.gap;
  sys.degeneracy = gm.degeneracy;
  sys.states = gm.states;
}

// every total-number sector; levels are E - mu N with mu at the centre of the interval that
// keeps the target sector ground state lowest
void grand_canonical(System &sys, const fermion::Operator &op, std::size_t target) {
  const std::size_t modes = op.modes;
  if (modes > 12) throw std::invalid_argument("grand canonical ensemble supports at most 12 modes");
  std::vector<Eigen::VectorXd> values(modes + 1);
  for (std::size_t q = 0; q <= modes; ++q)
    values[q] = ed::diagonalize(fermion::to_dense(op, fermion::number_sector(modes, q)), 0).values;
  const double e0 = values[target][0];
  double lo = -kInfinity, hi = kInfinity;
  for (std::size_t q = 0; q < target; ++q) lo = std::max(lo, (e0 - values[q][0]) / double(target - q));
  for (std::size_t q = target + 1; q <= modes; ++q) hi = std::min(hi, (values[q][0] - e0) / double(q - target));
  if (lo > hi + 1e-12)
    throw std::runtime_error("grand canonical: no chemical potential makes the target sector the ground state");
  if (std::isinf(lo)) lo = hi;
  if (std::isinf(hi)) hi = lo;
  sys.mu = std::isinf(lo) ? 0.0 : 0.5 * (lo + hi);
  std::vector<double> all;
  for (std::size_t q = 0; q <= modes; ++q)
    for (Eigen::Index i = 0; i < values[q].size(); ++i) all.push_back(values[q][i] - sys.mu * double(q));
  std::sort(all.begin(), all.end());
  sys.spectrum = levels_from_values(all);
  sys.ground_energy_in_ensemble = sys.energy - sys.mu * double(target);
}

// (4,4)-type sectors of the 3x3 lattice: eigenvalues per momentum block, vectors only where needed
void hubbard_blocks(System &sys, const fermion::Operator &op, const ed::Basis &sector, std::size_t lx,
                    std::size_t ly) {
  auto blocks = fermion::symmetry_blocks(op, sector, fermion::lattice_translations(lx, ly, 2));
  std::vector<Eigen::VectorXd> vals;
  std::vector<double> all;
  for (auto &b : blocks) {
    vals.push_back(ed::eigh(b.h, false).values);
    auto v = to_vector(vals.back());
    all.insert(all.end(), v.begin(), v.end());
  }
  std::sort(all.begin(), all.end());
  Eigen::VectorXd sorted = Eigen::Map<Eigen::VectorXd>(all.data(), Eigen::Index(all.size()));
  const double tol = ed::default_tolerance(sorted);
  const double e0 = all.front();
  std::vector<Vector> ground;
  for (std::size_t k = 0; k < blocks.size(); ++k) {
    if (vals[k].size() == 0 || vals[k][0] > e0 + tol) continue;
    auto es = ed::eigh(blocks[k].h, true);
    for (Eigen::Index i = 0; i < es.values.size() && es.values[i] <= e0 + tol; ++i)
      ground.push_back(blocks[k].embed(es.vectors.col(i)).normalized());
  }
  sys.energy = e0;
  sys.degeneracy = ground.size();
  sys.states = Matrix(Eigen::Index(sector.dim()), Eigen::Index(ground.size()));
  for (std::size_t c = 0; c < ground.size(); ++c) sys.states.col(Eigen::Index(c)) = ground[c];
  sys.spectrum = levels_from_values(all, tol);
  sys.gap = sys.spectrum.size() > 1 ? sys.spectrum[1].energy - e0 : 0;
}

}  // namespace

std::string to_string(Ensemble e) {
  switch (e) {
    case Ensemble::canonical_full: return "canonical-full";
    case Ensemble::canonical_sector: return "canonical-sector";
    case Ensemble::grand_canonical: return "grand-canonical";
  }
  return "?";
}

Ensemble ensemble_from_string(const std::string &s) {
  if (s == "canonical-full") return Ensemble::canonical_full;
  if (s == "canonical-sector") return Ensemble::canonical_sector;
  if (s == "grand-canonical") return Ensemble::grand_canonical;
  throw std::invalid_argument("unknown ensemble '" + s + "'");
}

PResult compute_p(const Matrix &states, const ed::Basis &basis, const std::vector<Region> &regions,
                  std::uint64_t seed) {
  if (regions.empty()) throw std::invalid_argument("compute_p: no regions");
  PResult out;
  for (const auto &r : regions) {
    auto m = analysis::minimize_smallest_eigenvalue(states, basis, r, seed);
    RegionP row;
    row.region = m.region;
    row.p = m.value;
    row.phi = m.phi;
    row.coefficients = m.coefficients;
    row.basis_p = 1;
    Bipartition bp(basis, r);
    Matrix joint = Matrix::Zero(bp.region_dim(), bp.region_dim());
    for (Eigen::Index a = 0; a < states.cols(); ++a) {
      Matrix psi = bp.reshape(states.col(a));
      Matrix rho = psi * psi.adjoint();
      joint += rho;
      row.basis_p = std::min(row.basis_p, std::max(0.0, eig(rho).eigenvalues()[0]));
    }
    row.rank = analysis::reduce(row.region, joint).support_rank;
    if (row.p < out.p || out.table.empty()) {
      out.p = row.p;
      out.achieving = row.region;
    }
    out.table.push_back(std::move(row));
  }
  return out;
}

double projector_overlap(const Matrix &states, const ed::Basis &basis, const Region &region, const Vector &phi) {
  Bipartition bp(basis, region);
  const Eigen::Index dim = states.rows();
  Matrix keep = Matrix::Identity(phi.size(), phi.size()) - phi * phi.adjoint() / phi.squaredNorm();
  if (dim <= kFullOverlapCap) {
    Matrix pt(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i) pt.col(i) = bp.flatten(keep * bp.reshape(Vector::Unit(dim, i)));
    Matrix m = pt * states * states.adjoint() * pt;
    return eig(m).eigenvalues().maxCoeff();
  }
  // same spectrum through the ground-space compression U^dag Pt U
  Matrix u(dim, states.cols());
  for (Eigen::Index a = 0; a < states.cols(); ++a) u.col(a) = bp.flatten(keep * bp.reshape(states.col(a)));
  return eig(states.adjoint() * u).eigenvalues().maxCoeff();
}

double uhlmann_fidelity(const Matrix &a, const Matrix &b) {
  Matrix sa = psd_sqrt(a);
  Matrix inner = psd_sqrt(sa * b * sa);
  const double t = inner.trace().real();
  return t * t;
}

Surrogate presumed_surrogate(const Vector &psi, const ed::Basis &basis, const Region &region) {
  Bipartition bp(basis, region);
  Matrix m = bp.reshape(psi);
  Matrix rho = m * m.adjoint();
  auto es = eig(rho);
  const auto &ev = es.eigenvalues();
  Surrogate s;
  s.removed = std::max(0.0, ev[0]);
  if (ev[0] <= analysis::kSupportTol) {
    s.rank_deficient = true;
    s.state = psi;
    s.phi = es.eigenvectors().col(0);
    return s;
  }
  Eigen::Index deg = 1;
  while (deg < ev.size() && ev[deg] - ev[0] <= 1e-10) ++deg;
  Vector phi = es.eigenvectors().col(0);
  if (deg > 1) {
    s.tie_broken = true;
    Matrix e = es.eigenvectors().leftCols(deg);
    for (Eigen::Index k = rho.rows(); k-- > 0;) {
      Vector v = e * e.row(k).adjoint();  // projection of basis vector k
      if (v.norm() > 1e-8) {
        phi = v.normalized();
        break;
      }
    }
  }
  s.phi = phi;
  s.removed = std::max(0.0, (phi.adjoint() * rho * phi)(0, 0).real());
  Matrix kept = m - phi * (phi.adjoint() * m);
  s.state = bp.flatten(kept) / std::sqrt(1.0 - s.removed);
  s.fidelity = std::norm(psi.dot(s.state));
  Matrix rho2 = kept * kept.adjoint() / (1.0 - s.removed);
  s.rdm_fidelity = uhlmann_fidelity(rho, rho2);
  return s;
}

EnergyFloor energy_floor(double e_gs, double gap, double p) {
  if (p < 0 || p > 1) throw std::invalid_argument("energy_floor: p outside [0, 1]");
  return {e_gs + p * gap, p};
}

std::vector<Level> levels_from_values(const std::vector<double> &values, double tol) {
  std::vector<double> v = values;
  std::sort(v.begin(), v.end());
  std::vector<Level> out;
  for (double e : v) {
    if (!out.empty() && e - out.back().energy <= tol)
      out.back().multiplicity += 1;
    else
      out.push_back({e, 1});
  }
  return out;
}

double ground_weight(const std::vector<Level> &spectrum, double deg_gs, double e_gs, double beta) {
  double z = 0;
  for (const auto &l : spectrum) z += l.multiplicity * std::exp(-beta * (l.energy - e_gs));
  return deg_gs / z;
}

TemperatureFloor temperature_floor(const std::vector<Level> &spectrum, double deg_gs, double e_gs, double p) {
  if (p < 0 || p > 1) throw std::invalid_argument("temperature_floor: p outside [0, 1]");
  if (spectrum.empty() || deg_gs <= 0) throw std::invalid_argument("temperature_floor: empty spectrum");
  TemperatureFloor t;
  if (p == 0) return t;  // pure ground state: T = 0
  const double target = 1.0 - p;
  if (ground_weight(spectrum, deg_gs, e_gs, 0.0) >= target) {
    t.infinite = true;
    t.t = kInfinity;
    t.beta = 0;
    return t;
  }
  double lo = 0, hi = 1;
  double gap = kInfinity;
  for (const auto &l : spectrum)
    if (l.energy - e_gs > 1e-12) gap = std::min(gap, l.energy - e_gs);
  if (std::isfinite(gap)) hi = 1.0 / gap;
  double w_prev = ground_weight(spectrum, deg_gs, e_gs, lo);
  std::size_t doublings = 0;
  while (true) {
    const double w = ground_weight(spectrum, deg_gs, e_gs, hi);
    if (!(w >= w_prev - 1e-15)) throw std::runtime_error("temperature_floor: ground weight not monotone in beta");
    if (w >= target) break;
    if (++doublings > 2000) throw std::runtime_error("temperature_floor: no bracket for the root");
    lo = hi;
    w_prev = w;
    hi *= 2;
  }
  auto f = [&](double beta) { return ground_weight(spectrum, deg_gs, e_gs, beta) - target; };
  boost::uintmax_t iters = 500;
  auto r = boost::math::tools::toms748_solve(f, lo, hi, boost::math::tools::eps_tolerance<double>(45), iters);
  t.beta = 0.5 * (r.first + r.second);
  t.t = 1.0 / t.beta;
  t.residual = std::abs(f(t.beta)) / target;
  return t;
}

System prepare_system(const models::ModelSpec &spec, std::optional<Ensemble> ensemble) {
  spec.validate();
  System sys;
  sys.model = models::to_string(spec.kind);
  sys.sites = num_sites(spec);
  sys.fermionic = fermionic(spec);

  switch (spec.kind) {
    case models::Kind::ising_chain:
    case models::Kind::commuting_pauli_custom: {
      auto h = spec.kind == models::Kind::ising_chain ? models::build_ising(spec.n, spec.sign, spec.boundary, spec.axis)
                                                      : models::build_commuting(spec.terms);
      sys.ensemble = ensemble.value_or(Ensemble::canonical_full);
      if (sys.ensemble != Ensemble::canonical_full)
        throw std::invalid_argument("ensemble: spin models use canonical-full");
      auto gm = analysis::commuting_ground_manifold(h);
      sys.basis = ed::Basis::spins(h.n(), 2);
      sys.states = gm.states;
      sys.energy = gm.energy;
      sys.gap = gm.gap;
      sys.degeneracy = gm.degeneracy;
      for (auto &l : cph::merge_levels(cph::enumerate_spectrum(h)))
        sys.spectrum.push_back({l.energy, double(l.multiplicity)});
      break;
    }
    case models::Kind::heisenberg_chain: {
      sys.ensemble = ensemble.value_or(Ensemble::canonical_full);
      if (sys.ensemble != Ensemble::canonical_full)
        throw std::invalid_argument("ensemble: spin models use canonical-full");
      auto h = models::build_heisenberg(spec.n, spec.spin, spec.boundary);
      auto es = ed::diagonalize(h);
      fill_ground(sys, es);
      sys.basis = h.basis;
      sys.spectrum = levels_from_values(to_vector(es.values), ed::default_tolerance(es.values));
      break;
    }
    case models::Kind::syk_dirac:
    case models::Kind::fermi_hubbard: {
      fermion::Operator op;
      ed::Basis sector;
      std::size_t target = 0;
      if (spec.kind == models::Kind::syk_dirac) {
        op = models::build_syk_dirac(spec.n, spec.mu, spec.seed, spec.variance).op;
        target = spec.particles.value_or(spec.n / 2);
        sector = fermion::number_sector(spec.n, target);
      } else {
        op = models::build_fermi_hubbard(spec.lx, spec.ly, spec.t, spec.u, spec.boundary);
        const std::size_t l = spec.lx * spec.ly;
        const std::size_t nu = spec.n_up.value_or(l / 2), nd = spec.n_down.value_or(l / 2);
        target = nu + nd;
        sector = fermion::species_sector(l, nu, nd);
      }
      sys.ensemble = ensemble.value_or(Ensemble::canonical_sector);
      if (sys.ensemble == Ensemble::canonical_full) {
        auto full = fermion::fock_basis(op.modes);
        auto es = ed::diagonalize(fermion::to_dense(op, full));
        fill_ground(sys, es);
        sys.basis = full;
        sys.spectrum = levels_from_values(to_vector(es.values), ed::default_tolerance(es.values));
        break;
      }
      sys.basis = sector;
      const bool blocks = spec.kind == models::Kind::fermi_hubbard && sector.dim() > kBlockThreshold &&
                          spec.boundary == models::Boundary::periodic;
      if (blocks) {
        hubbard_blocks(sys, op, sector, spec.lx, spec.ly);
      } else {
        auto es = ed::diagonalize(fermion::to_dense(op, sector));
        fill_ground(sys, es);
        sys.spectrum = levels_from_values(to_vector(es.values), ed::default_tolerance(es.values));
      }
      if (sys.ensemble == Ensemble::grand_canonical) grand_canonical(sys, op, target);
      break;
    }
    case models::Kind::syk_majorana: {
      auto s = models::build_syk_majorana(spec.n, spec.seed, spec.variance);
      auto h = s.dense();
      h.basis = fermion::fock_basis(spec.n);
      sys.ensemble = ensemble.value_or(Ensemble::canonical_full);
      if (sys.ensemble == Ensemble::grand_canonical)
        throw std::invalid_argument("ensemble: Majorana SYK conserves parity only");
      if (sys.ensemble == Ensemble::canonical_sector) {
        auto full = ed::diagonalize(h);
        // parity of the lowest state picks the sector
        Vector g = full.vectors.col(0);
        Eigen::Index best = 0;
        g.cwiseAbs().maxCoeff(&best);
        const int parity = __builtin_popcountll(std::uint64_t(best)) & 1;
        h = fermion::restrict_sector(h, fermion::parity_sector(spec.n, parity));
      }
      auto es = ed::diagonalize(h);
      fill_ground(sys, es);
      sys.basis = h.basis;
      sys.spectrum = levels_from_values(to_vector(es.values), ed::default_tolerance(es.values));
      break;
    }
  }
  if (sys.ensemble != Ensemble::grand_canonical) sys.ground_energy_in_ensemble = sys.energy;
  return sys;
}

RegionFamily parse_region_family(const std::string &s) {
  RegionFamily f;
  auto with_m = [&](const std::string &prefix) -> std::optional<std::size_t> {
    if (s.rfind(prefix, 0) != 0) return std::nullopt;
    const std::string rest = s.substr(prefix.size());
    if (rest.empty() || rest.find_first_not_of("0123456789") != std::string::npos)
      throw std::invalid_argument("region family: bad size in '" + s + "'");
    return std::stoul(rest);
  };
  if (s == "single") {
    f.kind = FamilyKind::single;
    f.m = 1;
  } else if (s == "half") {
    f.kind = FamilyKind::half;
  } else if (s == "half+1") {
    f.kind = FamilyKind::half_plus_one;
  } else if (s == "hubbard") {
    f.kind = FamilyKind::hubbard;
  } else if (auto m = with_m("windows:")) {
    f.kind = FamilyKind::windows;
    f.m = *m;
  } else if (auto m2 = with_m("subsets:")) {
    f.kind = FamilyKind::subsets;
    f.m = *m2;
  } else {
    throw std::invalid_argument("unknown region family '" + s + "'");
  }
  return f;
}

std::string to_string(const RegionFamily &f) {
  switch (f.kind) {
    case FamilyKind::single: return "single";
    case FamilyKind::windows: return "windows:" + std::to_string(f.m);
    case FamilyKind::subsets: return "subsets:" + std::to_string(f.m);
    case FamilyKind::half: return "half";
    case FamilyKind::half_plus_one: return "half+1";
    case FamilyKind::hubbard: return "hubbard";
    case FamilyKind::explicit_list: return "explicit";
  }
  return "?";
}

std::vector<Region> hubbard_regions(std::size_t lx, std::size_t ly) {
  const std::size_t l = lx * ly;
  auto site = [&](std::size_t x, std::size_t y) { return (x % lx) + lx * (y % ly); };
  std::vector<Region> out;
  auto add = [&](std::vector<std::size_t> s) {
    Region r = analysis::make_region(std::move(s), 2 * l);
    if (std::find(out.begin(), out.end(), r) == out.end()) out.push_back(r);
  };
  add({site(0, 0), site(0, 0) + l});
  for (std::size_t spin = 0; spin < 2; ++spin) {
    const std::size_t off = spin * l;
    if (lx > 1) add({site(0, 0) + off, site(1, 0) + off});
    if (ly > 1) add({site(0, 0) + off, site(0, 1) + off});
    if (lx > 2) add({site(0, 0) + off, site(1, 0) + off, site(2, 0) + off});
    if (ly > 2) add({site(0, 0) + off, site(0, 1) + off, site(0, 2) + off});
    if (lx > 1 && ly > 1) add({site(0, 0) + off, site(1, 0) + off, site(0, 1) + off, site(1, 1) + off});
  }
  return out;
}

std::vector<Region> expand(const RegionFamily &f, const models::ModelSpec &spec) {
  const std::size_t n = num_sites(spec);
  const bool ferm = fermionic(spec);
  const bool periodic = spec.boundary == models::Boundary::periodic;
  auto sized = [&](std::size_t m) { return ferm ? analysis::subsets(n, m) : analysis::windows(n, m, periodic); };
  std::vector<Region> out;
  switch (f.kind) {
    case FamilyKind::single: out = analysis::subsets(n, 1); break;
    case FamilyKind::windows: out = analysis::windows(n, f.m, periodic); break;
    case FamilyKind::subsets: out = analysis::subsets(n, f.m); break;
    case FamilyKind::half: out = sized(n / 2); break;
    case FamilyKind::half_plus_one: out = sized(n / 2 + 1); break;
    case FamilyKind::hubbard:
      if (spec.kind != models::Kind::fermi_hubbard) throw std::invalid_argument("region family 'hubbard' needs a Hubbard model");
      out = hubbard_regions(spec.lx, spec.ly);
      break;
    case FamilyKind::explicit_list:
      for (auto &r : f.regions) out.push_back(analysis::make_region(r.sites, n));
      break;
  }
  if (out.empty()) throw std::invalid_argument("region family '" + to_string(f) + "' is empty for this model");
  return out;
}

GlassFloorReport run_glass_floor(const System &sys, const std::vector<Region> &regions, std::uint64_t seed) {
  GlassFloorReport rep;
  rep.model = sys.model;
  rep.regions = regions;
  rep.ensemble = sys.ensemble;
  rep.e_gs = sys.energy;
  rep.degeneracy = sys.degeneracy;
  rep.gap = sys.gap;
  auto pr = compute_p(sys.states, sys.basis, regions, seed);
  rep.p = pr.p;
  rep.achieving = pr.achieving;
  rep.table = pr.table;
  rep.fidelity_bound = 1.0 - rep.p;
  auto ef = energy_floor(sys.energy, sys.gap, rep.p);
  rep.energy_bound = ef.bound;
  rep.normalized_energy = ef.normalized;
  rep.temperature = temperature_floor(sys.spectrum, double(sys.degeneracy), sys.ground_energy_in_ensemble, rep.p);
  rep.t_over_gap = rep.gap > 0 ? rep.temperature.t / rep.gap : kInfinity;

  for (const auto &a : rep.table)
    for (const auto &b : rep.table) {
      if (a.region.size() >= b.region.size()) continue;
      if (!std::includes(b.region.sites.begin(), b.region.sites.end(), a.region.sites.begin(), a.region.sites.end()))
        continue;
      if (b.p > a.p + 1e-10) rep.region_monotone = false;
    }
  for (const auto &row : rep.table)
    if (row.region == rep.achieving && sys.states.cols() > 0 && sys.states.rows() <= 4 * kFullOverlapCap)
      rep.cross_check = projector_overlap(sys.states, sys.basis, row.region, row.phi);
  return rep;
}

GlassFloorReport run_glass_floor(const models::ModelSpec &spec, const RegionFamily &family,
                                 std::optional<Ensemble> ensemble) {
  auto sys = prepare_system(spec, ensemble);
  return run_glass_floor(sys, expand(family, spec), spec.seed + 1);
}

}  // namespace steerkit::glassfloor
