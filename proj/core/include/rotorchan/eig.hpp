#pragma once

#include <vector>

#include "rotorchan/types.hpp"

namespace rotorchan {

// Dense nonsymmetric eigendecomposition (LAPACK zgeev). Left vectors obey
// u^H A = w u^H; left/right columns share the eigenvalue index.
struct DenseEig {
  Vector values;
  Matrix right;  // empty unless requested
  Matrix left;
};

DenseEig eig_dense(Matrix a, bool with_vectors);

// Hermitian eigendecomposition (zheev), eigenvalues ascending.
RealVector eigh_dense(const Matrix& a, Matrix* vectors = nullptr);

// Complex Schur form A = Q T Q^H (zgees).
struct SchurResult {
  Matrix t;
  Matrix q;
  Vector values;  // diag(T)
};

SchurResult schur_dense(Matrix a);

// Reorder the Schur form so the selected eigenvalues occupy the leading
// block (ztrsen); `select` has one flag per diagonal entry.
void schur_select_leading(SchurResult& s, const std::vector<int>& select);

}  // namespace rotorchan
