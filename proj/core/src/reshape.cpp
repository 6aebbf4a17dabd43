#include "rotorchan/reshape.hpp"

#include <cmath>

namespace rotorchan {

Vector vec(const Matrix& a) {
  const Eigen::Index n = a.rows();
  Vector v(n * a.cols());
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) v(i * a.cols() + j) = a(i, j);
  return v;
}

Matrix unvec(const Vector& v) {
  const auto n = static_cast<Eigen::Index>(std::llround(std::sqrt(double(v.size()))));
  if (n * n != v.size()) throw ConfigError("unvec: length not a square");
  Matrix a(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) a(i, j) = v(i * n + j);
  return a;
}

int bipartite_side(const Matrix& u) {
  if (u.rows() != u.cols()) throw ConfigError("reshape: matrix not square");
  const auto n = static_cast<Eigen::Index>(std::llround(std::sqrt(double(u.rows()))));
  if (n * n != u.rows())
    throw ConfigError("reshape: dimension is not a perfect square");
  return static_cast<int>(n);
}

namespace {

// Generic four-index permutation: out[(r0,r1),(c0,c1)] = u[pick(...)].
template <typename F>
Matrix permute4(const Matrix& u, F pick) {
  const int n = bipartite_side(u);
  Matrix out(u.rows(), u.cols());
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d) out(a * n + b, c * n + d) = pick(u, n, a, b, c, d);
  return out;
}

}  // namespace

Matrix realign_r1(const Matrix& u) {
  return permute4(u, [](const Matrix& m, int n, int a, int b, int c, int d) {
    return m(d * n + b, c * n + a);
  });
}

Matrix realign_r2(const Matrix& u) {
  return permute4(u, [](const Matrix& m, int n, int a, int b, int c, int d) {
    return m(a * n + c, b * n + d);
  });
}

Matrix partial_transpose_1(const Matrix& u) {
  return permute4(u, [](const Matrix& m, int n, int a, int b, int c, int d) {
    return m(c * n + b, a * n + d);
  });
}

Matrix partial_transpose_2(const Matrix& u) {
  return permute4(u, [](const Matrix& m, int n, int a, int b, int c, int d) {
    return m(a * n + d, c * n + b);
  });
}

Matrix swap_gate(int n) {
  Matrix s = Matrix::Zero(n * n, n * n);
  for (int j = 0; j < n; ++j)
    for (int b = 0; b < n; ++b) s(b * n + j, j * n + b) = 1.0;
  return s;
}

}  // namespace rotorchan
