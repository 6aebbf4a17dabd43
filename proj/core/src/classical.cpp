#include "rotorchan/classical.hpp"

#include <cmath>

#include "rotorchan/rng.hpp"

namespace rotorchan {

PhasePoint step_single_map(PhasePoint x, double alpha) {
  double pp = mod1(x.p - (alpha / kTwoPi) * std::sin(kTwoPi * x.q));
  double qp = mod1(x.q + pp);
  return {qp, pp};
}

PhasePoint inverse_single_map(PhasePoint x, double alpha) {
  double q = mod1(x.q - x.p);
  double p = mod1(x.p + (alpha / kTwoPi) * std::sin(kTwoPi * q));
  return {q, p};
}

PhasePoint4 step_coupled_map(PhasePoint4 x, const MapParams& mp) {
  double couple = mp.b * std::sin(kTwoPi * (x.q1 + x.q2));
  double p1 = mod1(x.p1 - (mp.alpha1 * std::sin(kTwoPi * x.q1) + couple) / kTwoPi);
  double p2 = mod1(x.p2 - (mp.alpha2 * std::sin(kTwoPi * x.q2) + couple) / kTwoPi);
  return {mod1(x.q1 + p1), p1, mod1(x.q2 + p2), p2};
}

PhasePoint4 inverse_coupled_map(PhasePoint4 x, const MapParams& mp) {
  double q1 = mod1(x.q1 - x.p1);
  double q2 = mod1(x.q2 - x.p2);
  double couple = mp.b * std::sin(kTwoPi * (q1 + q2));
  double p1 = mod1(x.p1 + (mp.alpha1 * std::sin(kTwoPi * q1) + couple) / kTwoPi);
  double p2 = mod1(x.p2 + (mp.alpha2 * std::sin(kTwoPi * q2) + couple) / kTwoPi);
  return {q1, p1, q2, p2};
}

Eigen::Matrix2d stability_matrix(double q, double alpha) {
  double vpp = alpha * std::cos(kTwoPi * q);  // V''(q) for V' = (a/2pi) sin
  Eigen::Matrix2d m;
  m << 1.0 - vpp, 1.0, -vpp, 1.0;
  return m;
}

Eigen::Matrix2d stability_matrix_product(PhasePoint x0, int t, double alpha) {
  Eigen::Matrix2d acc = Eigen::Matrix2d::Identity();
  PhasePoint x = x0;
  for (int i = 0; i < t; ++i) {
    acc = (stability_matrix(x.q, alpha) * acc).eval();
    x = step_single_map(x, alpha);
  }
  return acc;
}

double ftse(PhasePoint x0, int t, double alpha, double floor_tr) {
  double tr = std::abs(stability_matrix_product(x0, t, alpha).trace());
  if (tr < floor_tr) tr = floor_tr;
  return std::log(tr) / t;
}

PhaseSpaceField ftse_grid(int grid, int t, double alpha, double floor_tr,
                          int jobs) {
  PhaseSpaceField field(grid, FieldKind::Exponent);
#pragma omp parallel for schedule(static) num_threads(jobs > 0 ? jobs : 1)
  for (int ip = 0; ip < grid; ++ip) {
    for (int iq = 0; iq < grid; ++iq) {
      field.at(iq, ip) =
          ftse({field.cell_q(iq), field.cell_p(ip)}, t, alpha, floor_tr);
    }
  }
  return field;
}

double ftse_ensemble_mean(double alpha, int t, int samples, uint64_t seed,
                          double floor_tr) {
  auto rng = make_stream(seed, kStreamFtseEnsemble);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double acc = 0.0;
  for (int s = 0; s < samples; ++s) {
    PhasePoint x{u(rng), u(rng)};
    acc += ftse(x, t, alpha, floor_tr);
  }
  return acc / samples;
}

}  // namespace rotorchan
