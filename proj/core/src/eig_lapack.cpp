#include "rotorchan/eig.hpp"

#include <lapacke.h>

namespace rotorchan {

namespace {
lapack_complex_double* lp(Vector& v) {
  return reinterpret_cast<lapack_complex_double*>(v.data());
}
lapack_complex_double* lp(Matrix& m) {
  return reinterpret_cast<lapack_complex_double*>(m.data());
}
}  // namespace

DenseEig eig_dense(Matrix a, bool with_vectors) {
  const lapack_int n = static_cast<lapack_int>(a.rows());
  if (a.cols() != n) throw std::invalid_argument("eig_dense: matrix not square");
  DenseEig out;
  out.values.resize(n);
  char job = with_vectors ? 'V' : 'N';
  if (with_vectors) {
    out.right.resize(n, n);
    out.left.resize(n, n);
  }
  // Eigen matrices are column-major, which is LAPACK's native layout.
  lapack_int info = LAPACKE_zgeev(
      LAPACK_COL_MAJOR, job, job, n, lp(a), n, lp(out.values),
      with_vectors ? lp(out.left) : nullptr, n,
      with_vectors ? lp(out.right) : nullptr, n);
  if (info != 0)
    throw SolverError("zgeev failed, info=" + std::to_string(info));
  return out;
}

RealVector eigh_dense(const Matrix& a, Matrix* vectors) {
  const lapack_int n = static_cast<lapack_int>(a.rows());
  Matrix work = a;
  RealVector w(n);
  char job = vectors ? 'V' : 'N';
  lapack_int info =
      LAPACKE_zheev(LAPACK_COL_MAJOR, job, 'U', n, lp(work), n, w.data());
  if (info != 0)
    throw SolverError("zheev failed, info=" + std::to_string(info));
  if (vectors) *vectors = std::move(work);
  return w;
}

SchurResult schur_dense(Matrix a) {
  const lapack_int n = static_cast<lapack_int>(a.rows());
  SchurResult s;
  s.q.resize(n, n);
  s.values.resize(n);
  lapack_int sdim = 0;
  lapack_int info =
      LAPACKE_zgees(LAPACK_COL_MAJOR, 'V', 'N', nullptr, n, lp(a), n, &sdim,
                    lp(s.values), lp(s.q), n);
  if (info != 0)
    throw SolverError("zgees failed, info=" + std::to_string(info));
  s.t = std::move(a);
  return s;
}

void schur_select_leading(SchurResult& s, const std::vector<int>& select) {
  const lapack_int n = static_cast<lapack_int>(s.t.rows());
  std::vector<lapack_logical> sel(select.begin(), select.end());
  lapack_int m = 0;
  double cond_eig = 0.0, cond_sub = 0.0;
  lapack_int info =
      LAPACKE_ztrsen(LAPACK_COL_MAJOR, 'N', 'V', sel.data(), n, lp(s.t), n,
                     lp(s.q), n, lp(s.values), &m, &cond_eig, &cond_sub);
  if (info != 0)
    throw SolverError("ztrsen failed, info=" + std::to_string(info));
}

}  // namespace rotorchan
