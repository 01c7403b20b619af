#include <complex>
#include <sstream>
#include <stdexcept>

#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

#include "steerkit/ed.hpp"

namespace steerkit::ed {

Eigensystem eigh(const Matrix &h, bool want_vectors, Eigen::Index cap) {
  const Eigen::Index n = h.rows();
  if (h.cols() != n) throw std::invalid_argument("eigh: matrix is not square");
  if (n > cap) {
    std::stringstream ss;
    ss << "eigh: dimension " << n << " exceeds the dense cap " << cap
       << "; restrict to a symmetry sector or request a few eigenpairs iteratively";
    throw std::invalid_argument(ss.str());
  }
  Eigensystem out;
  out.values.resize(n);
  if (n == 0) return out;
  Matrix a = h;
  lapack_int info = LAPACKE_zheevd(LAPACK_COL_MAJOR, want_vectors ? 'V' : 'N', 'U', lapack_int(n),
                                   a.data(), lapack_int(n), out.values.data());
  if (info != 0) {
    std::stringstream ss;
    ss << "eigh: zheevd failed with info " << info;
    throw std::runtime_error(ss.str());
  }
  if (want_vectors) out.vectors = std::move(a);
  return out;
}

}  // namespace steerkit::ed
