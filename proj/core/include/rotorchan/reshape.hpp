#pragma once

#include "rotorchan/types.hpp"

namespace rotorchan {

// Row-wise vectorization is fixed project-wide: <ij|A> = A_ij, so
// vec(A)[i*n+j] = A(i,j) and |ABC> = (A (x) C^T)|B>.
Vector vec(const Matrix& a);
Matrix unvec(const Vector& v);

// Bipartite reshapes of an n^2 x n^2 operator U with row pair (i,a) and
// column pair (j,b), composite index x*n+y:
//   <ia|U|jb> = <ba|U^R1|ji> = <ij|U^R2|ab> = <ja|U^T1|ib> = <ib|U^T2|ja>
// All four are involutions and Frobenius-norm preserving.
Matrix realign_r1(const Matrix& u);
Matrix realign_r2(const Matrix& u);
Matrix partial_transpose_1(const Matrix& u);
Matrix partial_transpose_2(const Matrix& u);

// Swap gate S|jb> = |bj> on the n x n bipartite space.
Matrix swap_gate(int n);

// Side length of the bipartite factor; throws if dim is not a square.
int bipartite_side(const Matrix& u);

}  // namespace rotorchan
