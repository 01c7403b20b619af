#include "steerkit/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace steerkit::analysis {

namespace {

constexpr Eigen::Index kDenseParentCap = 1024;

std::size_t ipow(std::size_t b, std::size_t e) {
  std::size_t r = 1;
  while (e--) r *= b;
  return r;
}

Matrix hermitize(const Matrix &m) { return 0.5 * (m + m.adjoint()); }

// eigenvalues ascending with vectors
Eigen::SelfAdjointEigenSolver<Matrix> eig(const Matrix &m) { return Eigen::SelfAdjointEigenSolver<Matrix>(hermitize(m)); }

Matrix ground_span_projector(const Matrix &states) { return states * states.adjoint(); }

}  // namespace

std::string Region::label() const {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < sites.size(); ++i) os << (i ? "," : "") << sites[i];
  os << '}';
  return os.str();
}

Region make_region(std::vector<std::size_t> sites, std::size_t num_sites) {
  std::sort(sites.begin(), sites.end());
  if (sites.empty()) throw std::invalid_argument("region: empty");
  if (std::adjacent_find(sites.begin(), sites.end()) != sites.end())
    throw std::invalid_argument("region: repeated site");
  if (sites.back() >= num_sites) throw std::invalid_argument("region: site out of range");
  if (sites.size() >= num_sites) throw std::invalid_argument("region: must be smaller than the system");
  return Region{std::move(sites)};
}

Bipartition::Bipartition(const ed::Basis &basis, const Region &region) : region_(region) {
  region_ = make_region(region.sites, basis.sites);
  const std::size_t n = basis.sites, k = region_.size(), dim = basis.dim();
  std::vector<bool> in(n, false);
  for (auto s : region_.sites) in[s] = true;
  row_.resize(dim);
  col_.resize(dim);
  sign_.assign(dim, 1.0);

  if (!basis.fermionic) {
    const std::size_t d = basis.local_dim;
    region_dim_ = ipow(d, k);
    complement_dim_ = ipow(d, n - k);
    std::vector<std::size_t> digits(n);
    for (std::size_t i = 0; i < dim; ++i) {
      std::uint64_t code = basis.code(i);
      for (std::size_t s = n; s-- > 0;) {
        digits[s] = code % d;
        code /= d;
      }
      std::size_t r = 0, c = 0;
      for (std::size_t s = 0; s < n; ++s) {
        if (in[s])
          r = r * d + digits[s];
        else
          c = c * d + digits[s];
      }
      row_[i] = r;
      col_[i] = c;
    }
    return;
  }

  // fermions: occupation of mode m at bit (n - 1 - m); reorder region modes to the front
  region_dim_ = std::size_t(1) << k;
  std::unordered_map<std::uint64_t, std::size_t> cols;
  for (std::size_t i = 0; i < dim; ++i) {
    const std::uint64_t code = basis.code(i);
    std::uint64_t r = 0, c = 0;
    std::size_t comp_before = 0, swaps = 0;
    for (std::size_t m = 0; m < n; ++m) {
      const bool occ = (code >> (n - 1 - m)) & 1u;
      if (in[m]) {
        r = (r << 1) | occ;
        if (occ) swaps += comp_before;
      } else {
        c = (c << 1) | occ;
        if (occ) ++comp_before;
      }
    }
    auto it = cols.try_emplace(c, cols.size()).first;
    row_[i] = r;
    col_[i] = it->second;
    sign_[i] = (swaps & 1u) ? -1.0 : 1.0;
  }
  complement_dim_ = cols.size();
}

Matrix Bipartition::reshape(const Vector &psi) const {
  if (std::size_t(psi.size()) != row_.size()) throw std::invalid_argument("reshape: dimension mismatch");
  Matrix m = Matrix::Zero(region_dim_, complement_dim_);
  for (std::size_t i = 0; i < row_.size(); ++i) m(row_[i], col_[i]) = sign_[i] * psi[i];
  return m;
}

Vector Bipartition::flatten(const Matrix &m) const {
  Vector v(row_.size());
  for (std::size_t i = 0; i < row_.size(); ++i) v[i] = sign_[i] * m(row_[i], col_[i]);
  return v;
}

Matrix Bipartition::trace_out_complement(const Matrix &rho) const {
  if (std::size_t(rho.rows()) != row_.size()) throw std::invalid_argument("partial trace: dimension mismatch");
  std::vector<std::vector<std::size_t>> groups(complement_dim_);
  for (std::size_t i = 0; i < row_.size(); ++i) groups[col_[i]].push_back(i);
  Matrix out = Matrix::Zero(region_dim_, region_dim_);
  for (auto &g : groups)
    for (auto i : g)
      for (auto j : g) out(row_[i], row_[j]) += sign_[i] * sign_[j] * rho(i, j);
  return out;
}

ReducedState reduce(const Region &region, const Matrix &rdm) {
  ReducedState r;
  r.region = region;
  r.matrix = hermitize(rdm);
  auto es = eig(r.matrix);
  const Eigen::Index d = r.matrix.rows();
  r.eigenvalues = es.eigenvalues().reverse();
  r.eigenvectors = es.eigenvectors().rowwise().reverse();
  r.smallest = r.eigenvalues[d - 1];
  r.smallest_nonzero = 0;
  for (Eigen::Index i = 0; i < d; ++i)
    if (r.eigenvalues[i] > kSupportTol) {
      ++r.support_rank;
      r.smallest_nonzero = r.eigenvalues[i];
    }
  return r;
}

ReducedState partial_trace(const Vector &psi, const ed::Basis &basis, const Region &keep) {
  Bipartition bp(basis, keep);
  Matrix m = bp.reshape(psi);
  return reduce(bp.region(), m * m.adjoint());
}

ReducedState partial_trace_mixed(const Matrix &rho, const ed::Basis &basis, const Region &keep) {
  Bipartition bp(basis, keep);
  return reduce(bp.region(), bp.trace_out_complement(rho));
}

Eigen::VectorXd schmidt_coefficients(const Vector &psi, const ed::Basis &basis, const Region &region) {
  Bipartition bp(basis, region);
  Eigen::BDCSVD<Matrix> svd(bp.reshape(psi));
  return svd.singularValues();
}

ed::GroundManifold commuting_ground_manifold(const cph::CommutingHamiltonian &h, double tol) {
  const auto &terms = h.terms();
  const bool diagonal = std::all_of(terms.begin(), terms.end(), [](const pauli::PauliOp &p) { return p.x_mask() == 0; });
  ed::GroundManifold gm;
  gm.tol = tol;
  if (!diagonal) {
    auto levels = cph::merge_levels(cph::enumerate_spectrum(h), tol);
    gm.energy = levels.front().energy;
    gm.gap = levels.size() > 1 ? levels[1].energy - levels[0].energy : 0;
    auto es = eig(cph::ground_projector(h, tol));
    const Eigen::Index dim = es.eigenvalues().size();
    std::vector<Eigen::Index> cols;
    for (Eigen::Index i = 0; i < dim; ++i)
      if (es.eigenvalues()[i] > 0.5) cols.push_back(i);
    gm.states = Matrix(dim, Eigen::Index(cols.size()));
    for (std::size_t c = 0; c < cols.size(); ++c) gm.states.col(Eigen::Index(c)) = es.eigenvectors().col(cols[c]);
    gm.degeneracy = cols.size();
    return gm;
  }
  if (h.n() > 30) throw std::invalid_argument("commuting_ground_manifold: too many qubits");
  const std::uint64_t dim = std::uint64_t(1) << h.n();
  std::vector<double> e(dim, 0.0);
  for (std::uint64_t b = 0; b < dim; ++b)
    for (std::size_t t = 0; t < terms.size(); ++t) e[b] += h.coeffs()[t] * terms[t].act(b).second.real();
  const double e0 = *std::min_element(e.begin(), e.end());
  std::vector<std::uint64_t> ground;
  double next = std::numeric_limits<double>::infinity();
  for (std::uint64_t b = 0; b < dim; ++b) {
    if (e[b] <= e0 + tol)
      ground.push_back(b);
    else
      next = std::min(next, e[b]);
  }
  gm.energy = e0;
  gm.gap = std::isfinite(next) ? next - e0 : 0;
  gm.degeneracy = ground.size();
  gm.states = Matrix::Zero(Eigen::Index(dim), Eigen::Index(ground.size()));
  for (std::size_t c = 0; c < ground.size(); ++c) gm.states(Eigen::Index(ground[c]), Eigen::Index(c)) = 1.0;
  return gm;
}

std::optional<SCQResult> find_trivial_scq(const Matrix &states, const ed::Basis &basis, const Region &region,
                                          double tol) {
  Bipartition bp(basis, region);
  std::vector<Matrix> rdms;
  Matrix joint = Matrix::Zero(bp.region_dim(), bp.region_dim());
  for (Eigen::Index a = 0; a < states.cols(); ++a) {
    Matrix m = bp.reshape(states.col(a));
    rdms.push_back(m * m.adjoint());
    joint += rdms.back();
  }
  auto r = reduce(bp.region(), joint / double(states.cols()));
  if (r.support_rank >= bp.region_dim()) return std::nullopt;
  Matrix v = r.eigenvectors.leftCols(Eigen::Index(r.support_rank));
  SCQResult out;
  out.region = bp.region();
  out.projector = v * v.adjoint();
  out.rank = r.support_rank;
  for (auto &rho : rdms) {
    if ((out.projector * rho * out.projector - rho).norm() > 1e-9)
      throw std::runtime_error("find_trivial_scq: support projector does not fix a ground-state RDM");
  }
  return out;
}

SCQReport verify_scq(const Matrix &a, const Matrix &h, const Matrix &pi, double tol) {
  if (a.rows() != h.rows() || a.rows() != pi.rows()) throw std::invalid_argument("verify_scq: dimension mismatch");
  SCQReport r;
  const Eigen::Index d = a.rows();
  r.comm_target = (a * pi - pi * a).norm();
  r.comm_h = (pi * (h * a - a * h) * pi).norm();
  r.conserved = r.comm_target < tol && r.comm_h < tol;
  const double tr_pi = pi.trace().real();
  Matrix pap = pi * a * pi;
  r.value = tr_pi > 0 ? pap.trace().real() / tr_pi : 0;
  r.trivial = (pap - r.value * pi).norm() < tol;
  r.degenerate = (a - (a.trace() / double(d)) * Matrix::Identity(d, d)).norm() < tol;
  if (!r.conserved || r.trivial) return r;

  auto es = eig(a);
  const auto &vals = es.eigenvalues();
  Eigen::Index start = 0;
  while (start < d) {
    Eigen::Index end = start + 1;
    while (end < d && vals[end] - vals[start] < 1e-8) ++end;
    Matrix v = es.eigenvectors().middleCols(start, end - start);
    InducedProjector ip;
    ip.eigenvalue = vals[start];
    ip.projector = v * v.adjoint();
    ip.comm_target = (ip.projector * pi - pi * ip.projector).norm();
    ip.comm_h = (pi * (h * ip.projector - ip.projector * h) * pi).norm();
    Matrix reduced = pi * ip.projector * pi;
    ip.reduced_rank = std::size_t(std::llround(reduced.trace().real()));
    ip.trivial_in_target = (reduced - pi).norm() < tol;
    ip.trivial_in_reduced = ip.reduced_rank > 0 && (reduced * reduced - reduced).norm() < tol &&
                            (reduced * ip.projector * reduced - reduced).norm() < tol;
    r.induced.push_back(std::move(ip));
    start = end;
  }
  return r;
}

std::string to_string(ParentVerdict v) {
  switch (v) {
    case ParentVerdict::phff: return "PHFF";
    case ParentVerdict::larger_gs: return "larger-GS";
    case ParentVerdict::no_scq: return "no-SCQ";
  }
  return "?";
}

std::vector<Region> windows(std::size_t num_sites, std::size_t len, bool periodic) {
  std::vector<Region> out;
  if (len == 0 || len >= num_sites) return out;
  const std::size_t starts = periodic ? num_sites : num_sites - len + 1;
  for (std::size_t s = 0; s < starts; ++s) {
    std::vector<std::size_t> sites;
    for (std::size_t k = 0; k < len; ++k) sites.push_back((s + k) % num_sites);
    out.push_back(make_region(std::move(sites), num_sites));
  }
  return out;
}

std::vector<Region> subsets(std::size_t num_sites, std::size_t size) {
  std::vector<Region> out;
  if (size == 0 || size >= num_sites) return out;
  std::vector<std::size_t> idx(size);
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    out.push_back(Region{idx});
    std::size_t i = size;
    while (i > 0 && idx[i - 1] == num_sites - size + i - 1) --i;
    if (i == 0) break;
    ++idx[i - 1];
    for (std::size_t j = i; j < size; ++j) idx[j] = idx[j - 1] + 1;
  }
  return out;
}

ParentReport build_parent_hamiltonian(const Matrix &states, const ed::Basis &basis, std::size_t max_range,
                                      bool periodic, double tol) {
  if (basis.fermionic) throw std::invalid_argument("build_parent_hamiltonian: spin bases only");
  ParentReport rep;
  rep.max_range = max_range;
  const std::size_t n = basis.sites;
  const Eigen::Index dim = Eigen::Index(basis.dim());
  const std::size_t deg = std::size_t(states.cols());

  std::vector<Bipartition> parts;
  for (std::size_t len = 1; len <= max_range && len < n; ++len)
    for (auto &w : windows(n, len, periodic)) {
      if (auto scq = find_trivial_scq(states, basis, w)) {
        rep.scqs.push_back(std::move(*scq));
        parts.emplace_back(basis, w);
      }
    }
  if (rep.scqs.empty()) {
    rep.verdict = ParentVerdict::no_scq;
    rep.ground_dim = std::size_t(dim);
    rep.method = "none";
    return rep;
  }

  rep.diagonal = std::all_of(rep.scqs.begin(), rep.scqs.end(), [](const SCQResult &s) {
    Matrix off = s.projector;
    off.diagonal().setZero();
    return off.norm() < 1e-12;
  });

  Matrix pg = Matrix();
  if (rep.diagonal) {
    rep.method = "diagonal";
    std::vector<std::size_t> zero;
    for (Eigen::Index i = 0; i < dim; ++i) {
      bool ok = true;
      for (std::size_t w = 0; w < parts.size() && ok; ++w)
        ok = rep.scqs[w].projector(parts[w].row(std::size_t(i)), parts[w].row(std::size_t(i))).real() > 0.5;
      if (ok) zero.push_back(std::size_t(i));
    }
    rep.ground_dim = zero.size();
    // ||P_PH - P_GS||^2 = dim P_PH + dim P_GS - 2 Tr(P_PH P_GS)
    double overlap = 0;
    for (auto i : zero) overlap += states.row(Eigen::Index(i)).squaredNorm();
    rep.projector_distance = std::sqrt(std::max(0.0, double(zero.size()) + double(deg) - 2 * overlap));
  } else if (dim <= kDenseParentCap) {
    rep.method = "dense";
    Matrix h = Matrix::Zero(dim, dim);
    for (std::size_t w = 0; w < parts.size(); ++w) {
      const auto &bp = parts[w];
      const auto &p = rep.scqs[w].projector;
      for (Eigen::Index i = 0; i < dim; ++i) {
        h(i, i) += 1.0;
        for (Eigen::Index j = 0; j < dim; ++j)
          if (bp.col(std::size_t(i)) == bp.col(std::size_t(j)))
            h(i, j) -= bp.sign(std::size_t(i)) * bp.sign(std::size_t(j)) *
                       p(bp.row(std::size_t(i)), bp.row(std::size_t(j)));
      }
    }
    auto es = ed::eigh(h);
    Eigen::Index z = 0;
    while (z < dim && es.values[z] < tol) ++z;
    rep.ground_dim = std::size_t(z);
    Matrix v = es.vectors.leftCols(z);
    rep.projector_distance = (v * v.adjoint() - ground_span_projector(states)).norm();
  } else {
    rep.method = "lanczos";
    auto op = [&](const Vector &v) {
      Vector out = double(parts.size()) * v;
      for (std::size_t w = 0; w < parts.size(); ++w)
        out -= parts[w].flatten(rep.scqs[w].projector * parts[w].reshape(v));
      return out;
    };
    auto es = ed::lanczos_lowest(op, dim, deg + 1, 7, 1e-10);
    Eigen::Index z = 0;
    while (z < es.values.size() && es.values[z] < tol) ++z;
    rep.ground_dim = std::size_t(z);
    Matrix v = es.vectors.leftCols(z);
    // both projectors have rank at most deg + 1; compare through overlaps
    Matrix o = states.adjoint() * v;
    rep.projector_distance =
        std::sqrt(std::max(0.0, double(z) + double(deg) - 2 * o.squaredNorm()));
  }
  rep.verdict = (rep.ground_dim == deg && rep.projector_distance < tol) ? ParentVerdict::phff
                                                                         : ParentVerdict::larger_gs;
  return rep;
}

std::optional<std::size_t> minimal_phff_range(const Matrix &states, const ed::Basis &basis, std::size_t max_range,
                                              bool periodic) {
  for (std::size_t r = 1; r <= max_range && r < basis.sites; ++r)
    if (build_parent_hamiltonian(states, basis, r, periodic).verdict == ParentVerdict::phff) return r;
  return std::nullopt;
}

Distinguishability bipartite_distinguishable(const Matrix &states, const ed::Basis &basis, const Region &traced,
                                             double tol) {
  Distinguishability out;
  const Eigen::Index d = states.cols();
  if (d <= 1) {
    out.vacuous = true;
    out.smallest_singular = 1;
    return out;
  }
  Bipartition bp(basis, traced);
  const Eigen::Index ds = Eigen::Index(bp.region_dim()), dc = Eigen::Index(bp.complement_dim());
  // Tr_S |psi_i><psi_j| = T_i T_j^dag with T_i = Psi_i^T on the complement
  std::vector<Matrix> t(d);
  Matrix stack(dc, d * ds);
  for (Eigen::Index i = 0; i < d; ++i) {
    t[i] = bp.reshape(states.col(i)).transpose();
    stack.middleCols(i * ds, ds) = t[i];
  }
  // compress onto the span of all columns; Frobenius products are preserved
  Eigen::BDCSVD<Matrix> svd(stack, Eigen::ComputeThinU);
  const auto &sv = svd.singularValues();
  Eigen::Index r = 0;
  while (r < sv.size() && sv[r] > 1e-12 * std::max(1.0, sv[0])) ++r;
  Matrix q = svd.matrixU().leftCols(r);
  std::vector<Matrix> a(d);
  for (Eigen::Index i = 0; i < d; ++i) a[i] = q.adjoint() * t[i];
  Matrix ops(r * r, d * d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) {
      Matrix o = a[i] * a[j].adjoint();
      ops.col(i + d * j) = Eigen::Map<const Vector>(o.data(), r * r);
    }
  if (ops.rows() < ops.cols()) {
    // more operators than the dimension they live in
    out.distinguishable = false;
    out.smallest_singular = 0;
    Eigen::FullPivLU<Matrix> lu(ops);
    Vector w = lu.kernel().col(0);
    w.normalize();
    out.witness = Eigen::Map<Matrix>(w.data(), d, d);
    return out;
  }
  Eigen::BDCSVD<Matrix> s2(ops, Eigen::ComputeThinV);
  const auto &s = s2.singularValues();
  out.smallest_singular = s[s.size() - 1];
  out.distinguishable = out.smallest_singular > tol;
  if (!out.distinguishable) {
    Vector w = s2.matrixV().col(s.size() - 1);
    out.witness = Eigen::Map<Matrix>(w.data(), d, d);
  }
  return out;
}

RegionMinimum minimize_smallest_eigenvalue(const Matrix &states, const ed::Basis &basis, const Region &region,
                                           std::uint64_t seed, std::size_t starts) {
  Bipartition bp(basis, region);
  const Eigen::Index d = states.cols();
  std::vector<Matrix> psi(d);
  for (Eigen::Index a = 0; a < d; ++a) psi[a] = bp.reshape(states.col(a));

  RegionMinimum best;
  best.region = bp.region();
  best.value = std::numeric_limits<double>::infinity();

  auto combine = [&](const Vector &c) {
    Matrix m = Matrix::Zero(psi[0].rows(), psi[0].cols());
    for (Eigen::Index a = 0; a < d; ++a) m += c[a] * psi[a];
    return m;
  };
  auto run = [&](Vector c) {
    double prev = std::numeric_limits<double>::infinity();
    Vector phi;
    std::size_t it = 0;
    double value = prev;
    for (; it < 2000; ++it) {
      Matrix m = combine(c);
      auto es = eig(m * m.adjoint());
      phi = es.eigenvectors().col(0);
      value = std::max(0.0, es.eigenvalues()[0]);
      if (d == 1) break;
      Matrix w(d, psi[0].cols());
      for (Eigen::Index a = 0; a < d; ++a) w.row(a) = phi.adjoint() * psi[a];
      auto gs = eig(w.conjugate() * w.transpose());
      c = gs.eigenvectors().col(0);
      const double next = std::max(0.0, gs.eigenvalues()[0]);
      if (next < 1e-14 || (it > 0 && prev - next <= 1e-10 * next)) {
        value = next;
        break;
      }
      prev = next;
      value = next;
    }
    if (value < best.value) {
      best.value = value;
      best.coefficients = c;
      best.phi = phi;
      best.iterations = it;
    }
  };

  if (d == 1) {
    run(Vector::Ones(1));
    return best;
  }
  for (Eigen::Index a = 0; a < d; ++a) run(Vector::Unit(d, a));
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  for (std::size_t s = 0; s < starts; ++s) {
    Vector c(d);
    for (Eigen::Index a = 0; a < d; ++a) c[a] = cplx(g(rng), g(rng));
    run(c.normalized());
  }
  return best;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::ffs: return "FFS";
    case Verdict::nffss: return "NFFSS";
    case Verdict::nffjs: return "NFFJS";
    case Verdict::nffjs_candidate: return "NFFJS-candidate";
    case Verdict::nffns: return "NFFNS";
    case Verdict::unknown: return "unknown";
  }
  return "?";
}

ClassifyReport classify(const ClassifyInput &in) {
  ClassifyReport rep;
  const double sum_min = std::accumulate(in.term_minima.begin(), in.term_minima.end(), 0.0);
  rep.frustration_free = std::abs(sum_min - in.energy) < in.tol * std::max(1.0, std::abs(in.energy));
  rep.degenerate = in.states.cols() > 1;
  if (rep.frustration_free) {
    rep.verdict = Verdict::ffs;
    rep.reason = "every local term is minimized by the ground manifold";
    return rep;
  }

  std::vector<Region> regions;
  for (std::size_t len = 1; len <= in.locality_budget; ++len)
    for (auto &w : windows(in.basis.sites, len, in.periodic)) regions.push_back(w);
  for (auto &r : in.extra_regions) {
    Region m = make_region(r.sites, in.basis.sites);
    if (std::find(regions.begin(), regions.end(), m) == regions.end()) regions.push_back(m);
  }

  for (auto &r : regions) {
    RegionEvidence ev;
    ev.region = r;
    ev.p = minimize_smallest_eigenvalue(in.states, in.basis, r).value;
    ev.trivial_scq = ev.p <= kSupportTol;
    if (auto s = find_trivial_scq(in.states, in.basis, r)) rep.scqs.push_back(std::move(*s));
    ev.distinguishable = bipartite_distinguishable(in.states, in.basis, r, in.tol).distinguishable;
    rep.trivial_scq_exists |= ev.trivial_scq;
    rep.indistinguishable |= rep.degenerate && !ev.distinguishable;
    rep.regions.push_back(std::move(ev));
  }

  if (!in.basis.fermionic) {
    rep.parent = build_parent_hamiltonian(in.states, in.basis, in.locality_budget, in.periodic);
    if (rep.parent->verdict == ParentVerdict::phff) {
      rep.verdict = Verdict::nffss;
      rep.reason = "frustration-free parent Hamiltonian within the locality budget";
      return rep;
    }
  }
  if (!rep.trivial_scq_exists) {
    rep.verdict = Verdict::nffns;
    rep.reason = "no trivial SCQ in any ground subspace within the budget";
    return rep;
  }
  if (!rep.degenerate || !rep.indistinguishable) {
    if (in.basis.fermionic) {
      rep.verdict = Verdict::unknown;
      rep.reason = "parent Hamiltonian not evaluated for fermionic bases";
    } else {
      rep.verdict = Verdict::nffns;
      rep.reason = rep.degenerate ? "ground manifold is bipartite distinguishable on every region"
                                  : "nondegenerate ground state without a frustration-free parent";
    }
    return rep;
  }
  if (in.commuting_pauli) {
    rep.verdict = Verdict::nffjs;
    rep.reason = "commuting Pauli ground manifold is steerable";
  } else {
    rep.verdict = in.basis.fermionic ? Verdict::unknown : Verdict::nffjs_candidate;
    rep.reason = "necessary conditions I-III hold";
  }
  return rep;
}

}  // namespace steerkit::analysis
