#pragma once

#include <rotorchan/field.hpp>
#include <rotorchan/types.hpp>

namespace rotorchan {

// Position-basis torus coherent state centered at (q, p), unit squeezing.
// The plane Gaussian is periodized with an image sum over |k| <= 3, which
// saturates double precision for n_dim >= 2. Returned vector has unit norm.
Vector coherent_state(int n_dim, double q, double p);

// All n_dim^2 lattice states (a/n_dim, c/n_dim) as columns, column index
// c * n_dim + a. The frame resolves the identity: (1/n_dim) C C^H = I.
Matrix coherent_state_frame(int n_dim);

// Husimi raster h(q, p) = |<qp|psi>|^2 over grid x grid cell centers.
// psi is normalized first; values sum to grid^2 / n_dim up to truncation.
PhaseSpaceField husimi_state(const Vector& psi, int grid);

// Husimi raster h(q, p) = |<qp| X |qp>|^2 of an operator mode given as its
// row-wise vectorization. X is scaled to unit Frobenius norm first, so
// rasters of different modes share a common normalization.
PhaseSpaceField husimi_mode(const Vector& mode, int grid);

// Intensity raster |f(q, p)|^2 of a truncated Fourier series whose
// coefficients are indexed by fourier_index over the given cutoff. The
// coefficient vector is scaled to unit norm first. Requires
// grid > 2 * cutoff so no two retained waves alias on the lattice.
PhaseSpaceField fourier_mode_field(const Vector& coeff, int cutoff, int grid);

}  // namespace rotorchan
