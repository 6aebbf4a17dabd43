#pragma once

#include <array>
#include <cstdint>

#include "rotorchan/field.hpp"
#include "rotorchan/types.hpp"

namespace rotorchan {

// Point on the unit torus, both coordinates in [0,1).
struct PhasePoint {
  double q = 0.0;
  double p = 0.0;
};

// Two coupled rotors: (q1,p1,q2,p2), all in [0,1).
struct PhasePoint4 {
  double q1 = 0.0, p1 = 0.0, q2 = 0.0, p2 = 0.0;
};

// One kick-then-drift step of the standard map on the unit torus.
// Momentum updates first: p' = p - (alpha/2pi) sin(2pi q), then q' = q + p'.
PhasePoint step_single_map(PhasePoint x, double alpha);

// Exact inverse of step_single_map.
PhasePoint inverse_single_map(PhasePoint x, double alpha);

// Coupled pair: each momentum absorbs its own kick plus the shared
// sin(2pi(q1+q2)) impulse before the drift.
PhasePoint4 step_coupled_map(PhasePoint4 x, const MapParams& mp);

PhasePoint4 inverse_coupled_map(PhasePoint4 x, const MapParams& mp);

// One-step tangent matrix of the single map at pre-step position q.
// Unit determinant by construction.
Eigen::Matrix2d stability_matrix(double q, double alpha);

// Product of tangent matrices along the t-step orbit from x0, latest step
// leftmost.
Eigen::Matrix2d stability_matrix_product(PhasePoint x0, int t, double alpha);

// Finite-time stability exponent (1/t) ln |tr M_t|. Traces below `floor`
// clamp to ln(floor)/t so elliptic cells stay finite.
double ftse(PhasePoint x0, int t, double alpha, double floor_tr = 1e-15);

// FTSE sampled at the G x G cell centers ((i+1/2)/G, (j+1/2)/G).
PhaseSpaceField ftse_grid(int grid, int t, double alpha,
                          double floor_tr = 1e-15, int jobs = 1);

// Mean FTSE over `samples` uniformly seeded initial conditions.
double ftse_ensemble_mean(double alpha, int t, int samples, uint64_t seed,
                          double floor_tr = 1e-15);

}  // namespace rotorchan
