#pragma once

#include <cstdint>
#include <vector>

#include "rotorchan/types.hpp"

namespace rotorchan {

// Fourier modes F_{mn}(q,p) = exp[2pi i (qm + pn)] with |m|,|n| <= M form the
// truncation basis; linear index (m+M)*(2M+1) + (n+M), m slower.
inline int fourier_dim(int cutoff) { return (2 * cutoff + 1) * (2 * cutoff + 1); }

inline Eigen::Index fourier_index(int m, int n, int cutoff) {
  return static_cast<Eigen::Index>(m + cutoff) * (2 * cutoff + 1) + (n + cutoff);
}

// Single standard map, one step: <m',n'|K|m,n> = J_{m-m'}(alpha n') [n'=m+n].
double local_koopman_element(int mp, int np, int m, int n, double alpha);

// Reduced (single-rotor) channel of the coupled map. The coupling average
// multiplies by J0(b n'), n' = m+n the updated momentum index:
//   <m',n'|K|m,n> = J0(b n') J_{m-m'}(alpha n') [n' = m+n].
// Transitions out of |n'| <= M are dropped (hard truncation).
double koopman_element(int mp, int np, int m, int n, double alpha, double b);

// Truncated channel matrix. Real, column-sparse: column (m,n) has at most
// 2M+1 nonzeros, all in the momentum row block n' = m+n. `axis` selects which
// rotor is kept; only the local kick strength differs.
struct KoopmanChannel {
  int cutoff = 0;
  double alpha = 0.0;
  double b = 0.0;
  Axis axis = Axis::R1;
  SparseRealMatrix matrix;
};

KoopmanChannel build_koopman_channel(int cutoff, const MapParams& mp, Axis axis);

// c_t = <g|K^t|f> for Fourier observables f=(m,n), g=(m',n'), t = 0..t_max,
// by repeated sparse application.
std::vector<double> classical_correlation(const KoopmanChannel& k, int m, int n,
                                          int mp, int np, int t_max);

// Monte Carlo oracle for a channel element: uniform noise z plays the role
// of the traced rotor coordinate, the (q,p) integral is a uniform-grid
// quadrature of the composed Fourier integrand of the noisy map
//   p' = p - (alpha sin 2pi q + b sin 2pi(q+z))/2pi,  q' = q + p'.
struct McEstimate {
  cxd value;
  double std_error;  // combined over real and imaginary parts
  int samples;
};

McEstimate stochastic_step_oracle(int mp, int np, int m, int n, double alpha,
                                  double b, int samples, int grid,
                                  uint64_t seed);

// Same estimator over two noisy map iterations with independent noise draws;
// cross-checks the semigroup product of two single-step elements.
McEstimate stochastic_two_step_oracle(int mp, int np, int m, int n,
                                      double alpha, double b, int samples,
                                      int grid, uint64_t seed);

// Residual of the rank-1 property of the cross channels K_Gamma: for a
// band-limited probe f, integral of f over rotor 1 at frozen rotor-2 points
// must equal the mean mode coefficient. Returns the max deviation over
// `points` frozen (q2,p2) samples.
double gamma_rank1_residual(const MapParams& mp, const Matrix& probe_coeffs,
                            int probe_cutoff, int grid, int points,
                            uint64_t seed);

}  // namespace rotorchan
