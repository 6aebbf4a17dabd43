#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include <rotorchan/classical.hpp>
#include <rotorchan/rng.hpp>

using namespace rotorchan;

TEST_CASE("single map matches frozen oracle values") {
  PhasePoint x{0.2, 0.7};
  PhasePoint y = step_single_map(x, 3.0);
  CHECK(y.q == doctest::Approx(0.4459039628156058).epsilon(1e-14));
  CHECK(y.p == doctest::Approx(0.24590396281560578).epsilon(1e-14));

  PhasePoint z = x;
  for (int t = 0; t < 5; ++t) z = step_single_map(z, 3.0);
  CHECK(z.q == doctest::Approx(0.6649804487695239).epsilon(1e-12));
  CHECK(z.p == doctest::Approx(0.2975617227442606).epsilon(1e-12));
}

TEST_CASE("coupled map matches frozen oracle values") {
  MapParams mp;
  mp.alpha1 = 1.3;
  mp.alpha2 = 2.6;
  mp.b = 0.45;
  PhasePoint4 x{0.15, 0.35, 0.82, 0.64};
  PhasePoint4 y = step_coupled_map(x, mp);
  CHECK(y.q1 == doctest::Approx(0.3460334282965617).epsilon(1e-14));
  CHECK(y.p1 == doctest::Approx(0.1960334282965617).epsilon(1e-14));
  CHECK(y.q2 == doctest::Approx(0.8478402130191346).epsilon(1e-14));
  CHECK(y.p2 == doctest::Approx(0.02784021301913464).epsilon(1e-12));
}

TEST_CASE("inverse maps undo forward steps") {
  auto rng = make_stream(11, kStreamPropertyTests);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    const double alpha = 6.0 * u01(rng);
    PhasePoint x{u01(rng), u01(rng)};
    PhasePoint back = inverse_single_map(step_single_map(x, alpha), alpha);
    CHECK(std::abs(back.q - x.q) <= 1e-12);
    CHECK(std::abs(back.p - x.p) <= 1e-12);

    MapParams mp;
    mp.alpha1 = 5.0 * u01(rng);
    mp.alpha2 = 5.0 * u01(rng);
    mp.b = u01(rng);
    PhasePoint4 x4{u01(rng), u01(rng), u01(rng), u01(rng)};
    PhasePoint4 b4 = inverse_coupled_map(step_coupled_map(x4, mp), mp);
    CHECK(std::abs(b4.q1 - x4.q1) <= 1e-12);
    CHECK(std::abs(b4.p1 - x4.p1) <= 1e-12);
    CHECK(std::abs(b4.q2 - x4.q2) <= 1e-12);
    CHECK(std::abs(b4.p2 - x4.p2) <= 1e-12);
  }
}

TEST_CASE("tangent matrices are area preserving and match the orbit oracle") {
  for (double q : {0.0, 0.13, 0.77}) {
    const Eigen::Matrix2d m = stability_matrix(q, 4.2);
    CHECK(m.determinant() == doctest::Approx(1.0).epsilon(1e-14));
  }
  const Eigen::Matrix2d m3 = stability_matrix_product({0.2, 0.7}, 3, 3.0);
  CHECK(m3.trace() == doctest::Approx(14.739038544488345).epsilon(1e-12));
  CHECK(m3.determinant() == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("ftse is exactly ln2/t for the free map") {
  for (int t : {1, 4, 8}) {
    const double flat = std::log(2.0) / t;
    CHECK(ftse({0.31, 0.62}, t, 0.0) == doctest::Approx(flat).epsilon(1e-14));
  }
}

TEST_CASE("ftse matches frozen orbit values") {
  CHECK(ftse({0.0, 0.0}, 8, 3.9) ==
        doctest::Approx(0.0625527812305405).epsilon(1e-10));
  CHECK(ftse({0.0, 0.0}, 8, 4.1) ==
        doctest::Approx(0.31573233558157976).epsilon(1e-10));
  CHECK(ftse({0.2, 0.7}, 6, 5.0) ==
        doctest::Approx(0.8789799053410455).epsilon(1e-10));
}

TEST_CASE("ftse grid equals pointwise evaluation and ignores worker count") {
  const PhaseSpaceField f1 = ftse_grid(12, 5, 3.3, 1e-15, 1);
  const PhaseSpaceField f2 = ftse_grid(12, 5, 3.3, 1e-15, 3);
  REQUIRE(f1.values.size() == 144);
  for (int ip = 0; ip < 12; ++ip)
    for (int iq = 0; iq < 12; ++iq) {
      const double direct =
          ftse({(iq + 0.5) / 12.0, (ip + 0.5) / 12.0}, 5, 3.3);
      CHECK(f1.at(iq, ip) == doctest::Approx(direct).epsilon(1e-14));
      CHECK(f1.at(iq, ip) == f2.at(iq, ip));
    }
}

TEST_CASE("ensemble mean is deterministic per seed") {
  const double a = ftse_ensemble_mean(10.0, 8, 300, 17);
  const double b = ftse_ensemble_mean(10.0, 8, 300, 17);
  const double c = ftse_ensemble_mean(10.0, 8, 300, 18);
  CHECK(a == b);
  CHECK(std::abs(a - c) < 0.2);  // different draw, same distribution
  CHECK(std::abs(a - std::log(5.0)) < 0.3);
}
