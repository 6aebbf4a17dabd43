#include "rotorchan/bessel.hpp"

#include <cassert>
#include <cmath>
#include <cstdlib>
#include <limits>

namespace rotorchan {
namespace {

// Power series sum_k (-1)^k (x/2)^{n+2k} / (k! (n+k)!). For x < 2 the terms
// decrease from k=0 on, so there is no cancellation growth.
double series_jn(int n, double x) {
  double half = 0.5 * x;
  double term = 1.0;
  for (int k = 1; k <= n; ++k) term *= half / k;  // (x/2)^n / n!
  double sum = term;
  double x2 = -half * half;
  for (int k = 1; k < 64; ++k) {
    term *= x2 / (static_cast<double>(k) * (n + k));
    sum += term;
    if (std::abs(term) <= 1e-18 * std::abs(sum)) break;
  }
  return sum;
}

// Start order for the backward recurrence: past the turning point the
// magnitude decays like the Airy tail, so a margin ~16*cbrt(x) suppresses
// the seed contamination below 1e-17 relative.
int miller_start(int nmax, double x) {
  int base = std::max(nmax, static_cast<int>(std::ceil(x)));
  int margin = static_cast<int>(16.0 * std::cbrt(std::max(x, 1.0))) + 24;
  int m = base + margin;
  return m + (m & 1);  // even start keeps the normalization bookkeeping simple
}

std::vector<double> series_array(int nmax, double x) {
  std::vector<double> out(nmax + 1);
  for (int n = 0; n <= nmax; ++n) out[n] = series_jn(n, x);
  return out;
}

std::vector<double> miller_array(int nmax, double x) {
  const int m0 = miller_start(nmax, x);
  std::vector<double> out(nmax + 1, 0.0);
  double jp = 0.0;   // J_{k+1} (scaled)
  double jc = 1e-30; // J_k seed at k = m0
  double norm = 0.0; // accumulates J_0 + 2*sum J_{2k}
  for (int k = m0; k >= 1; --k) {
    double jm = (2.0 * k / x) * jc - jp;
    jp = jc;
    jc = jm;  // jc now holds J_{k-1}
    if (k - 1 <= nmax) out[k - 1] = jc;
    if (((k - 1) & 1) == 0 && k - 1 > 0) norm += 2.0 * jc;  // even orders >= 2
    if (std::abs(jc) > 1e250) {  // rescale long recurrences before overflow
      jc *= 1e-250;
      jp *= 1e-250;
      norm *= 1e-250;
      for (double& v : out) v *= 1e-250;
    }
  }
  norm += jc;  // J_0 term
  for (double& v : out) v /= norm;
  return out;
}

}  // namespace

std::vector<double> bessel_j_array(int nmax, double x) {
  assert(nmax >= 0 && x >= 0.0);
  if (x == 0.0) {
    std::vector<double> out(nmax + 1, 0.0);
    out[0] = 1.0;
    return out;
  }
  if (x < 2.0) return series_array(nmax, x);
  return miller_array(nmax, x);
}

double bessel_j(int n, double x) {
  // J_{-n}(x) = (-1)^n J_n(x) and J_n(-x) = (-1)^n J_n(x).
  double sign = 1.0;
  if (n < 0) {
    n = -n;
    if (n & 1) sign = -sign;
  }
  if (x < 0.0) {
    x = -x;
    if (n & 1) sign = -sign;
  }
  if (x == 0.0) return n == 0 ? sign : 0.0;
  if (x < 2.0) return sign * series_jn(n, x);
  return sign * miller_array(n, x)[n];
}

}  // namespace rotorchan
