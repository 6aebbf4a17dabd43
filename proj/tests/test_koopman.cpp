#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include <rotorchan/bessel.hpp>
#include <rotorchan/koopman.hpp>
#include <rotorchan/rng.hpp>
#include <rotorchan/spectral.hpp>

using namespace rotorchan;

TEST_CASE("channel element factors into coupling average times local kick") {
  for (int m = -3; m <= 3; ++m)
    for (int n = -3; n <= 3; ++n)
      for (int mp = -3; mp <= 3; ++mp) {
        const int np = m + n;
        const double full = koopman_element(mp, np, m, n, 1.8, 0.7);
        const double local = local_koopman_element(mp, np, m, n, 1.8);
        CHECK(full == doctest::Approx(bessel_j(0, 0.7 * np) * local)
                          .epsilon(1e-14));
        // Momentum bookkeeping: any other target row vanishes.
        CHECK(koopman_element(mp, np + 1, m, n, 1.8, 0.7) == 0.0);
      }
}

TEST_CASE("truncated matrix is column sparse in the momentum block") {
  const int cutoff = 7;
  KoopmanChannel k = build_koopman_channel(cutoff, MapParams{1.5, 1.5, 0.3},
                                           Axis::R1);
  REQUIRE(k.matrix.rows() == fourier_dim(cutoff));
  REQUIRE(k.matrix.cols() == fourier_dim(cutoff));

  const int width = 2 * cutoff + 1;
  for (int m = -cutoff; m <= cutoff; ++m)
    for (int n = -cutoff; n <= cutoff; ++n) {
      const Eigen::Index col = fourier_index(m, n, cutoff);
      const int target = m + n;
      int nnz = 0;
      for (SparseRealMatrix::InnerIterator it(k.matrix, col); it; ++it) {
        ++nnz;
        REQUIRE(std::abs(target) <= cutoff);
        const int row_n = int(it.row() % width) - cutoff;
        const int row_m = int(it.row() / width) - cutoff;
        CHECK(row_n == target);
        CHECK(it.value() ==
              doctest::Approx(koopman_element(row_m, row_n, m, n, 1.5, 0.3))
                  .epsilon(1e-14));
      }
      CHECK(nnz <= width);
      if (std::abs(target) > cutoff) CHECK(nnz == 0);
    }
}

TEST_CASE("uniform mode is an exact two-sided fixed point") {
  const int cutoff = 5;
  KoopmanChannel k = build_koopman_channel(cutoff, MapParams{2.2, 2.2, 0.9},
                                           Axis::R1);
  const Eigen::Index triv = fourier_index(0, 0, cutoff);
  RealVector e = RealVector::Zero(fourier_dim(cutoff));
  e[triv] = 1.0;
  RealVector right = k.matrix * e;
  RealVector left = k.matrix.transpose() * e;
  CHECK((right - e).cwiseAbs().maxCoeff() == 0.0);
  CHECK((left - e).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("zero kick strength leaves only the coupling decay rates") {
  // With no kick the index dynamics is (m,n) -> (m, m+n); m = 0 modes are
  // eigenvectors with eigenvalue J0(b n), everything else is nilpotent.
  const int cutoff = 6;
  const double b = 0.4;
  KoopmanChannel k = build_koopman_channel(cutoff, MapParams{0.0, 0.0, b},
                                           Axis::R1);
  Matrix dense = Matrix(k.matrix.cast<cxd>());
  SpectralDecomposition sd = full_spectrum(dense, false);
  CHECK(std::abs(sd.values[0] - 1.0) < 1e-13);
  CHECK(std::abs(sd.values[1] - bessel_j(0, b)) < 1e-13);
  CHECK(std::abs(sd.values[2] - bessel_j(0, b)) < 1e-13);

  int nonzero = 0;
  for (const cxd& v : sd.values)
    if (std::abs(v) > 1e-10) ++nonzero;
  CHECK(nonzero == 2 * cutoff + 1);
}

TEST_CASE("second rotor axis differs only through its kick strength") {
  KoopmanChannel a = build_koopman_channel(4, MapParams{1.1, 2.7, 0.5}, Axis::R2);
  KoopmanChannel b = build_koopman_channel(4, MapParams{2.7, 0.0, 0.5}, Axis::R1);
  CHECK((RealMatrix(a.matrix) - RealMatrix(b.matrix)).cwiseAbs().maxCoeff() ==
        0.0);
}

TEST_CASE("closed-form elements agree with the stochastic oracle") {
  auto rng = make_stream(21, kStreamPropertyTests);
  std::uniform_int_distribution<int> idx(-4, 4);
  for (int s = 0; s < 12; ++s) {
    const int m = idx(rng), n = idx(rng), mp = idx(rng);
    const int np = m + n;
    const double closed = koopman_element(mp, np, m, n, 2.0, 0.5);
    McEstimate est =
        stochastic_step_oracle(mp, np, m, n, 2.0, 0.5, 200, 64, 100 + s);
    const double err = std::abs(est.value - closed);
    CHECK(err <= std::max(3.0 * est.std_error, 1e-9));
  }
}

TEST_CASE("correlation series starts from overlaps and steps by elements") {
  KoopmanChannel k = build_koopman_channel(12, MapParams{2.0, 2.0, 0.5}, Axis::R1);

  auto self = classical_correlation(k, 0, 0, 0, 0, 3);
  for (double c : self) CHECK(c == doctest::Approx(1.0).epsilon(1e-14));

  auto series = classical_correlation(k, 1, 0, 1, 1, 2);
  REQUIRE(series.size() == 3);
  CHECK(series[0] == 0.0);
  CHECK(series[1] ==
        doctest::Approx(koopman_element(1, 1, 1, 0, 2.0, 0.5)).epsilon(1e-14));

  // Two sparse applications against the two-step noisy-map estimate.
  McEstimate est = stochastic_two_step_oracle(1, 1, 1, 0, 2.0, 0.5, 400, 256, 33);
  CHECK(std::abs(series[2] - est.value.real()) <= 3.0 * est.std_error);
  CHECK(std::abs(est.value.imag()) <= 3.0 * est.std_error);
}

TEST_CASE("cross-channel factorization leaves no rotor-1 dependence") {
  auto rng = make_stream(9, kStreamPropertyTests);
  std::normal_distribution<double> g(0.0, 1.0);
  Matrix probe(5, 5);
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) probe(i, j) = cxd(g(rng), g(rng));
  CHECK(gamma_rank1_residual(MapParams{2.0, 2.0, 0.5}, probe, 2, 64, 5, 7) <
        1e-12);
  CHECK_THROWS_AS(gamma_rank1_residual(MapParams{2.0, 2.0, 0.5}, probe, 3, 32,
                                       2, 7),
                  ConfigError);
}
