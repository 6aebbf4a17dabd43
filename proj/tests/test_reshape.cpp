#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <rotorchan/reshape.hpp>
#include <rotorchan/rng.hpp>

using namespace rotorchan;

namespace {

Matrix random_bipartite(int n, uint64_t seed) {
  auto rng = make_stream(seed, kStreamPropertyTests);
  std::normal_distribution<double> g(0.0, 1.0);
  Matrix u(n * n, n * n);
  for (Eigen::Index i = 0; i < u.rows(); ++i)
    for (Eigen::Index j = 0; j < u.cols(); ++j) u(i, j) = cxd(g(rng), g(rng));
  return u;
}

// Index-rule oracle evaluated entry by entry, independent of the library's
// block-level implementation.
cxd entry(const Matrix& u, int n, int i, int a, int j, int b) {
  return u(static_cast<Eigen::Index>(i) * n + a,
           static_cast<Eigen::Index>(j) * n + b);
}

}  // namespace

TEST_CASE("row-wise vectorization layout") {
  Matrix a(2, 2);
  a << cxd(1, 0), cxd(2, 0), cxd(3, 0), cxd(4, 0);
  const Vector v = vec(a);
  CHECK(v(0) == cxd(1, 0));
  CHECK(v(1) == cxd(2, 0));
  CHECK(v(2) == cxd(3, 0));
  CHECK(v(3) == cxd(4, 0));
  CHECK((unvec(v) - a).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("reshapes follow their index rules") {
  const int n = 3;
  const Matrix u = random_bipartite(n, 5);
  const Matrix r1 = realign_r1(u);
  const Matrix r2 = realign_r2(u);
  const Matrix t1 = partial_transpose_1(u);
  const Matrix t2 = partial_transpose_2(u);
  for (int i = 0; i < n; ++i)
    for (int a = 0; a < n; ++a)
      for (int j = 0; j < n; ++j)
        for (int b = 0; b < n; ++b) {
          const cxd x = entry(u, n, i, a, j, b);
          CHECK(entry(r1, n, b, a, j, i) == x);
          CHECK(entry(r2, n, i, j, a, b) == x);
          CHECK(entry(t1, n, j, a, i, b) == x);
          CHECK(entry(t2, n, i, b, j, a) == x);
        }
}

TEST_CASE("reshapes are involutions and norm preserving") {
  const Matrix u = random_bipartite(4, 9);
  const double norm = u.norm();
  for (auto op : {realign_r1, realign_r2, partial_transpose_1,
                  partial_transpose_2}) {
    const Matrix once = op(u);
    CHECK(once.norm() == doctest::Approx(norm).epsilon(1e-13));
    CHECK((op(once) - u).cwiseAbs().maxCoeff() <= 1e-14);
  }
}

TEST_CASE("swap gate exchanges tensor factors") {
  const int n = 3;
  const Matrix s = swap_gate(n);
  CHECK((s * s - Matrix::Identity(n * n, n * n)).cwiseAbs().maxCoeff() == 0.0);
  auto rng = make_stream(21, kStreamPropertyTests);
  std::normal_distribution<double> g(0.0, 1.0);
  Vector a(n), b(n);
  for (int i = 0; i < n; ++i) {
    a(i) = cxd(g(rng), g(rng));
    b(i) = cxd(g(rng), g(rng));
  }
  Vector ab(n * n), ba(n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      ab(static_cast<Eigen::Index>(i) * n + j) = a(i) * b(j);
      ba(static_cast<Eigen::Index>(i) * n + j) = b(i) * a(j);
    }
  CHECK((s * ab - ba).cwiseAbs().maxCoeff() <= 1e-15);
}

TEST_CASE("vectorization identity |ABC> = (A (x) C^T)|B>") {
  const int n = 3;
  auto rng = make_stream(33, kStreamPropertyTests);
  std::normal_distribution<double> g(0.0, 1.0);
  auto rnd = [&](int r, int c) {
    Matrix m(r, c);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < c; ++j) m(i, j) = cxd(g(rng), g(rng));
    return m;
  };
  const Matrix a = rnd(n, n), b = rnd(n, n), c = rnd(n, n);
  Matrix kron(n * n, n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      kron.block(static_cast<Eigen::Index>(i) * n,
                 static_cast<Eigen::Index>(j) * n, n, n) =
          a(i, j) * c.transpose();
  CHECK((kron * vec(b) - vec(a * b * c)).cwiseAbs().maxCoeff() <= 1e-13);
}

TEST_CASE("bipartite side validation") {
  CHECK(bipartite_side(Matrix::Identity(9, 9)) == 3);
  CHECK_THROWS_AS(bipartite_side(Matrix::Identity(8, 8)), ConfigError);
}
