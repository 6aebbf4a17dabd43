#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include <rotorchan/husimi.hpp>
#include <rotorchan/koopman.hpp>
#include <rotorchan/reshape.hpp>

using namespace rotorchan;

TEST_CASE("coherent states are normalized and localized") {
  for (int n : {8, 31}) {
    Vector c = coherent_state(n, 0.32, 0.68);
    CHECK(std::abs(c.norm() - 1.0) < 1e-14);
  }
  // States far apart on the torus are nearly orthogonal.
  Vector a = coherent_state(20, 0.32, 0.68);
  Vector b = coherent_state(20, 0.82, 0.18);
  CHECK(std::abs(a.dot(b)) < 1e-6);
}

TEST_CASE("lattice frame resolves the identity") {
  for (int n : {12, 40}) {
    Matrix frame = coherent_state_frame(n);
    REQUIRE(frame.cols() == Eigen::Index(n) * n);
    Matrix gram = frame * frame.adjoint() / double(n);
    CHECK((gram - Matrix::Identity(n, n)).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("state raster peaks at the packet center and sums to grid^2/N") {
  const int n = 20, grid = 20;
  Vector c = coherent_state(n, 0.32, 0.68);
  PhaseSpaceField f = husimi_state(c, grid);
  REQUIRE(f.grid == grid);

  int best_q = 0, best_p = 0;
  double best = -1.0;
  for (int iq = 0; iq < grid; ++iq)
    for (int ip = 0; ip < grid; ++ip) {
      CHECK(f.at(iq, ip) >= 0.0);
      if (f.at(iq, ip) > best) {
        best = f.at(iq, ip);
        best_q = iq;
        best_p = ip;
      }
    }
  // (0.32, 0.68) lies in cell (6, 13) of a 20-point center lattice.
  CHECK(best_q == 6);
  CHECK(best_p == 13);

  double total = 0.0;
  for (double v : f.values) total += v;
  CHECK(total == doctest::Approx(double(grid) * grid / n).epsilon(1e-10));

  // Rescaling the input state must not change the raster.
  PhaseSpaceField g = husimi_state(3.0 * c, grid);
  for (size_t i = 0; i < f.values.size(); ++i)
    CHECK(f.values[i] == doctest::Approx(g.values[i]).epsilon(1e-13));
}

TEST_CASE("operator raster of the unit operator is flat") {
  const int n = 20, grid = 24;
  Vector mode = vec(Matrix::Identity(n, n));
  PhaseSpaceField f = husimi_mode(mode, grid);
  for (double v : f.values) CHECK(std::abs(v - 1.0 / n) < 1e-12);
}

TEST_CASE("fourier raster reproduces wave interference exactly") {
  const int cutoff = 3, grid = 16;
  Vector coeff = Vector::Zero(fourier_dim(cutoff));
  coeff[fourier_index(0, 0, cutoff)] = 1.0;
  coeff[fourier_index(1, 0, cutoff)] = 1.0;
  PhaseSpaceField f = fourier_mode_field(coeff, cutoff, grid);

  // Unit-norm coefficients give unit mean intensity (quadrature is exact
  // below the aliasing limit).
  double mean = 0.0;
  for (double v : f.values) mean += v;
  mean /= double(f.values.size());
  CHECK(mean == doctest::Approx(1.0).epsilon(1e-13));

  for (int iq = 0; iq < grid; ++iq) {
    const double q = (iq + 0.5) / grid;
    const double want = 1.0 + std::cos(kTwoPi * q);
    for (int ip = 0; ip < grid; ++ip)
      CHECK(std::abs(f.at(iq, ip) - want) < 1e-13);
  }
}

TEST_CASE("fourier raster rejects aliasing grids") {
  Vector coeff = Vector::Zero(fourier_dim(3));
  coeff[fourier_index(0, 0, 3)] = 1.0;
  CHECK_THROWS_AS(fourier_mode_field(coeff, 3, 6), ConfigError);
  CHECK_THROWS_AS(fourier_mode_field(coeff, 2, 8), ConfigError);
}
