#include "rotorchan/koopman.hpp"

#include <cmath>

#include "rotorchan/bessel.hpp"
#include "rotorchan/classical.hpp"
#include "rotorchan/rng.hpp"

namespace rotorchan {

namespace {

// J_k(y) for signed order and argument from the nonnegative-argument array.
inline double signed_j(const std::vector<double>& jarr, int k, bool neg_arg) {
  int ak = std::abs(k);
  double v = jarr[ak];
  // J_{-k}(y) = (-1)^k J_k(y); J_k(-y) = (-1)^k J_k(y). Both sign rules
  // together cancel unless exactly one applies.
  bool flip = (k < 0) != neg_arg;
  if (flip && (ak & 1)) v = -v;
  return v;
}

}  // namespace

double local_koopman_element(int mp, int np, int m, int n, double alpha) {
  if (np != m + n) return 0.0;
  return bessel_j(m - mp, alpha * np);
}

double koopman_element(int mp, int np, int m, int n, double alpha, double b) {
  if (np != m + n) return 0.0;
  return bessel_j(0, b * np) * bessel_j(m - mp, alpha * np);
}

KoopmanChannel build_koopman_channel(int cutoff, const MapParams& mp, Axis axis) {
  if (cutoff < 1) throw ConfigError("koopman cutoff must be >= 1");
  KoopmanChannel chan;
  chan.cutoff = cutoff;
  chan.alpha = axis == Axis::R1 ? mp.alpha1 : mp.alpha2;
  chan.b = mp.b;
  chan.axis = axis;

  const int width = 2 * cutoff + 1;
  const Eigen::Index dim = fourier_dim(cutoff);

  // All columns sharing the same n' = m+n reuse one Bessel row block:
  // orders 0..2M at argument |alpha n'| plus the J0(b n') coupling factor.
  std::vector<std::vector<double>> jrows(static_cast<size_t>(cutoff) + 1);
  std::vector<double> j0b(static_cast<size_t>(cutoff) + 1);
  for (int a = 0; a <= cutoff; ++a) {
    jrows[a] = bessel_j_array(2 * cutoff, std::abs(chan.alpha) * a);
    j0b[a] = bessel_j(0, chan.b * a);  // J0 is even, sign of the argument drops
  }

  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(static_cast<size_t>(dim) * width);
  for (int m = -cutoff; m <= cutoff; ++m)
    for (int n = -cutoff; n <= cutoff; ++n) {
      const int np = m + n;
      if (std::abs(np) > cutoff) continue;  // hard truncation
      const Eigen::Index col = fourier_index(m, n, cutoff);
      const auto& jr = jrows[std::abs(np)];
      const bool neg = (chan.alpha * np) < 0.0;
      const double coupling = j0b[std::abs(np)];
      for (int mprime = -cutoff; mprime <= cutoff; ++mprime) {
        double v = coupling * signed_j(jr, m - mprime, neg);
        if (v != 0.0)
          trip.emplace_back(fourier_index(mprime, np, cutoff), col, v);
      }
    }
  chan.matrix.resize(dim, dim);
  chan.matrix.setFromTriplets(trip.begin(), trip.end());
  chan.matrix.makeCompressed();
  return chan;
}

std::vector<double> classical_correlation(const KoopmanChannel& k, int m, int n,
                                          int mp, int np, int t_max) {
  const int cutoff = k.cutoff;
  if (std::abs(m) > cutoff || std::abs(n) > cutoff || std::abs(mp) > cutoff ||
      std::abs(np) > cutoff)
    throw ConfigError("correlation mode outside truncation");
  RealVector state = RealVector::Zero(k.matrix.rows());
  state(fourier_index(m, n, cutoff)) = 1.0;
  const Eigen::Index out_idx = fourier_index(mp, np, cutoff);
  std::vector<double> series;
  series.reserve(t_max + 1);
  series.push_back(state(out_idx));
  for (int t = 1; t <= t_max; ++t) {
    state = k.matrix * state;
    series.push_back(state(out_idx));
  }
  return series;
}

McEstimate stochastic_step_oracle(int mp, int np, int m, int n, double alpha,
                                  double b, int samples, int grid,
                                  uint64_t seed) {
  std::vector<cxd> per_sample(samples);
  const double h = 1.0 / grid;
  for (int s = 0; s < samples; ++s) {
    // Independent z per sample from a counter-derived stream, so parallel
    // callers and reruns see identical draws.
    auto rng = make_stream(seed, kStreamMonteCarlo, static_cast<uint64_t>(s));
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    const double z = u01(rng);
    cxd acc = 0.0;
    for (int iq = 0; iq < grid; ++iq) {
      const double q = (iq + 0.5) * h;
      const double kick =
          (alpha * std::sin(kTwoPi * q) + b * std::sin(kTwoPi * (q + z))) /
          kTwoPi;
      for (int ipp = 0; ipp < grid; ++ipp) {
        const double p = (ipp + 0.5) * h;
        const double pnew = p - kick;
        const double qnew = q + pnew;
        // conj(F_{m'n'}(q,p)) * F_{mn}(q',p')
        acc += std::polar(1.0, kTwoPi * (qnew * m + pnew * n) -
                                   kTwoPi * (q * mp + p * np));
      }
    }
    per_sample[s] = acc * (h * h);
  }
  cxd mean = 0.0;
  for (const cxd& v : per_sample) mean += v;
  mean /= double(samples);
  double var = 0.0;
  for (const cxd& v : per_sample) var += std::norm(v - mean);
  var /= samples > 1 ? double(samples - 1) : 1.0;
  McEstimate est;
  est.value = mean;
  est.std_error = std::sqrt(var / samples);
  est.samples = samples;
  return est;
}

McEstimate stochastic_two_step_oracle(int mp, int np, int m, int n,
                                      double alpha, double b, int samples,
                                      int grid, uint64_t seed) {
  std::vector<cxd> per_sample(samples);
  const double h = 1.0 / grid;
  for (int s = 0; s < samples; ++s) {
    auto rng = make_stream(seed, kStreamMonteCarlo, static_cast<uint64_t>(s));
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    const double z1 = u01(rng);
    const double z2 = u01(rng);
    cxd acc = 0.0;
    for (int iq = 0; iq < grid; ++iq) {
      const double q = (iq + 0.5) * h;
      for (int ipp = 0; ipp < grid; ++ipp) {
        const double p = (ipp + 0.5) * h;
        double kick1 =
            (alpha * std::sin(kTwoPi * q) + b * std::sin(kTwoPi * (q + z1))) /
            kTwoPi;
        const double p1 = p - kick1;
        const double q1 = q + p1;
        double kick2 =
            (alpha * std::sin(kTwoPi * q1) + b * std::sin(kTwoPi * (q1 + z2))) /
            kTwoPi;
        const double p2 = p1 - kick2;
        const double q2 = q1 + p2;
        acc += std::polar(1.0, kTwoPi * (q2 * m + p2 * n) -
                                   kTwoPi * (q * mp + p * np));
      }
    }
    per_sample[s] = acc * (h * h);
  }
  cxd mean = 0.0;
  for (const cxd& v : per_sample) mean += v;
  mean /= double(samples);
  double var = 0.0;
  for (const cxd& v : per_sample) var += std::norm(v - mean);
  var /= samples > 1 ? double(samples - 1) : 1.0;
  McEstimate est;
  est.value = mean;
  est.std_error = std::sqrt(var / samples);
  est.samples = samples;
  return est;
}

double gamma_rank1_residual(const MapParams& mp, const Matrix& probe_coeffs,
                            int probe_cutoff, int grid, int points,
                            uint64_t seed) {
  const int width = 2 * probe_cutoff + 1;
  if (probe_coeffs.rows() != width || probe_coeffs.cols() != width)
    throw ConfigError("probe coefficient block must be (2Mp+1)^2");
  auto rng = make_stream(seed, kStreamPropertyTests);
  std::uniform_real_distribution<double> u01(0.0, 1.0);

  auto probe = [&](double q, double p) {
    cxd acc = 0.0;
    for (int mm = -probe_cutoff; mm <= probe_cutoff; ++mm)
      for (int nn = -probe_cutoff; nn <= probe_cutoff; ++nn)
        acc += probe_coeffs(mm + probe_cutoff, nn + probe_cutoff) *
               std::polar(1.0, kTwoPi * (q * mm + p * nn));
    return acc;
  };
  // Mean of the probe over the torus = coefficient of the (0,0) mode.
  const cxd mean_coeff = probe_coeffs(probe_cutoff, probe_cutoff);

  double worst = 0.0;
  const double h = 1.0 / grid;
  for (int s = 0; s < points; ++s) {
    PhasePoint4 x;
    x.q2 = u01(rng);
    x.p2 = u01(rng);
    cxd acc = 0.0;
    for (int iq = 0; iq < grid; ++iq)
      for (int ipp = 0; ipp < grid; ++ipp) {
        x.q1 = (iq + 0.5) * h;
        x.p1 = (ipp + 0.5) * h;
        PhasePoint4 y = step_coupled_map(x, mp);
        acc += probe(y.q1, y.p1);
      }
    acc *= h * h;
    worst = std::max(worst, std::abs(acc - mean_coeff));
  }
  return worst;
}

}  // namespace rotorchan
