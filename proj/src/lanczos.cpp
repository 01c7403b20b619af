#include <algorithm>
#include <random>
#include <stdexcept>

#include "steerkit/ed.hpp"

namespace steerkit::ed {

namespace {

void orthogonalize(Vector &v, const Matrix &against, Eigen::Index count) {
  // two passes of classical Gram-Schmidt keep the basis orthonormal to machine precision
  for (int pass = 0; pass < 2; ++pass)
    for (Eigen::Index j = 0; j < count; ++j) v -= against.col(j) * against.col(j).dot(v);
}

}  // namespace

Eigensystem lanczos_lowest(const MatVec &op, Eigen::Index dim, std::size_t k, std::uint64_t seed,
                           double tol, std::size_t krylov) {
  if (k == 0 || Eigen::Index(k) > dim) throw std::invalid_argument("lanczos_lowest: invalid k");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  Matrix locked(dim, 0);
  std::vector<double> locked_values;

  while (locked_values.size() < k) {
    const Eigen::Index m = std::min<Eigen::Index>(Eigen::Index(krylov), dim - locked.cols());
    bool converged = false;
    Vector start(dim);
    for (Eigen::Index i = 0; i < dim; ++i) start(i) = cplx(gauss(rng), gauss(rng));
    for (int restart = 0; restart < 50 && !converged; ++restart) {
      orthogonalize(start, locked, locked.cols());
      start.normalize();
      Matrix q(dim, m);
      Eigen::MatrixXd t = Eigen::MatrixXd::Zero(m, m);
      q.col(0) = start;
      Eigen::Index used = m;
      for (Eigen::Index j = 0; j < m; ++j) {
        Vector w = op(q.col(j));
        orthogonalize(w, locked, locked.cols());
        t(j, j) = q.col(j).dot(w).real();
        orthogonalize(w, q, j + 1);
        double beta = w.norm();
        if (j + 1 == m) break;
        if (beta < 1e-12) {
          used = j + 1;
          break;
        }
        t(j, j + 1) = t(j + 1, j) = beta;
        q.col(j + 1) = w / beta;
      }
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t.topLeftCorner(used, used));
      Vector ritz = q.leftCols(used) * es.eigenvectors().col(0).cast<cplx>();
      ritz.normalize();
      Vector r = op(ritz) - es.eigenvalues()(0) * ritz;
      orthogonalize(r, locked, locked.cols());
      if (r.norm() < tol * std::max(1.0, std::abs(es.eigenvalues()(0)))) {
        locked.conservativeResize(Eigen::NoChange, locked.cols() + 1);
        locked.col(locked.cols() - 1) = ritz;
        locked_values.push_back(es.eigenvalues()(0));
        converged = true;
      } else {
        start = ritz;
      }
    }
    if (!converged) throw std::runtime_error("lanczos_lowest: no convergence after 50 restarts");
  }

  // Rayleigh-Ritz on the locked subspace orders and separates the pairs
  Matrix proj(locked.cols(), locked.cols());
  Matrix applied(dim, locked.cols());
  for (Eigen::Index j = 0; j < locked.cols(); ++j) applied.col(j) = op(locked.col(j));
  proj = locked.adjoint() * applied;
  proj = 0.5 * (proj + proj.adjoint()).eval();
  Eigen::SelfAdjointEigenSolver<Matrix> small(proj);
  Eigensystem out;
  out.values = small.eigenvalues();
  out.vectors = locked * small.eigenvectors();
  return out;
}

}  // namespace steerkit::ed
