#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include <rotorchan/bessel.hpp>

using namespace rotorchan;

namespace {
struct Ref {
  int n;
  double x;
  double value;
};

// Frozen arbitrary-precision references spanning the series branch, the
// recurrence branch, and negative orders/arguments.
const Ref kRefs[] = {
    {0, 0.1, 0.99750156206604003},   {0, 0.5, 0.9384698072408129},
    {0, 1.0, 0.76519768655796655},   {0, 1.5, 0.51182767173591813},
    {0, 2.0, 0.22389077914123567},   {0, 7.5, 0.2663396578803784},
    {1, 0.3, 0.148318816273104},     {1, 2.0, 0.57672480775687339},
    {2, 1.7, 0.28173894235274134},   {3, 6.0, 0.1147683848207753},
    {5, 0.9, 0.000148658021674596},  {5, 12.0, -0.073470963101658581},
    {10, 3.0, 1.2928351645715884e-5}, {10, 25.0, -0.075179843948523284},
    {20, 10.0, 1.1513369247813398e-5}, {0, -1.3, 0.62008598956150911},
    {3, -2.4, -0.19811479879756681}, {-4, 5.5, 0.39671678907285875},
};
}  // namespace

TEST_CASE("matches frozen high precision references") {
  for (const Ref& r : kRefs) {
    CAPTURE(r.n);
    CAPTURE(r.x);
    CHECK(bessel_j(r.n, r.x) == doctest::Approx(r.value).epsilon(1e-12));
  }
}

TEST_CASE("agrees with the standard library implementation") {
  for (int n : {0, 1, 2, 3, 7, 15}) {
    for (double x : {0.05, 0.7, 1.9, 3.3, 8.8, 21.0, 55.5}) {
      CAPTURE(n);
      CAPTURE(x);
      const double ours = bessel_j(n, x);
      const double ref = std::cyl_bessel_j(n, x);
      CHECK(std::abs(ours - ref) <= 1e-12 * std::max(1.0, std::abs(ref)));
    }
  }
}

TEST_CASE("symmetries for negative order and argument") {
  for (int n : {1, 2, 3, 6}) {
    for (double x : {0.4, 2.7, 9.1}) {
      const double sign = (n % 2 == 0) ? 1.0 : -1.0;
      CHECK(bessel_j(-n, x) == doctest::Approx(sign * bessel_j(n, x)));
      CHECK(bessel_j(n, -x) == doctest::Approx(sign * bessel_j(n, x)));
    }
  }
}

TEST_CASE("array form matches the scalar form") {
  for (double x : {0.3, 1.99, 2.01, 14.5}) {
    const auto arr = bessel_j_array(25, x);
    REQUIRE(arr.size() == 26);
    for (int n = 0; n <= 25; ++n) {
      CAPTURE(n);
      CAPTURE(x);
      CHECK(std::abs(arr[n] - bessel_j(n, x)) <= 1e-13);
    }
  }
}

TEST_CASE("normalization identity J0 + 2 sum J2k = 1") {
  for (double x : {0.9, 5.0, 30.0}) {
    const auto arr = bessel_j_array(120, x);
    double s = arr[0];
    for (int k = 2; k <= 120; k += 2) s += 2.0 * arr[k];
    CHECK(s == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("values at zero argument") {
  CHECK(bessel_j(0, 0.0) == 1.0);
  for (int n : {1, 2, 9}) CHECK(bessel_j(n, 0.0) == 0.0);
}
