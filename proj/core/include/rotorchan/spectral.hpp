#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "rotorchan/koopman.hpp"
#include "rotorchan/quantum.hpp"
#include "rotorchan/types.hpp"

namespace rotorchan {

//============================================================================
// Decompositions
//============================================================================

// Eigenvalues sorted by descending modulus. When vectors are present the
// columns align with `values`; left columns satisfy u^H A = w u^H and are
// scaled so <u_i|v_i> = 1 where that is well conditioned.
struct SpectralDecomposition {
  std::vector<cxd> values;
  Matrix right;  // empty when not requested / not available
  Matrix left;
  std::vector<double> residuals;   // ||A v - w v||_2 per pair, when known
  std::vector<bool> real_flag;     // |Im| below pairing tolerance
  std::vector<int> pair_index;     // conjugate partner position or -1
  bool full = false;
};

// Modulus-descending order plus conjugate-pair bookkeeping (applied in
// place by every solver).
void sort_and_pair(SpectralDecomposition& sd, double pair_tol = 1e-8);

// Dense full spectrum (zgeev). Guarded to dim <= 10000.
SpectralDecomposition full_spectrum(const Matrix& m, bool with_vectors);
SpectralDecomposition full_spectrum(const SparseRealMatrix& m, bool with_vectors);

//============================================================================
// Matrix-free operators and the iterative solver
//============================================================================

struct LinearOp {
  Eigen::Index dim = 0;
  std::function<void(const Vector&, Vector&)> apply;
};

LinearOp make_op(const Matrix& dense);
LinearOp make_op(const SparseRealMatrix& sparse);
LinearOp make_op(const ChannelApplier& ch);

// Projects `dir` (unit norm) out of inputs and outputs. Exact deflation when
// dir is simultaneously a left and right eigenvector, as the trivial
// stationary mode is here.
LinearOp deflate_op(LinearOp op, Vector dir);

struct TopKOptions {
  int k = 8;
  int subspace = 0;  // 0 = auto
  double tol = 1e-10;
  int max_restarts = 600;
  uint64_t seed = 1;
};

// Krylov-Schur restarted Arnoldi for the k largest-modulus eigenpairs.
// Deterministic for a fixed seed. Throws SolverError when not converged.
SpectralDecomposition top_k_spectrum(const LinearOp& op, const TopKOptions& opt);

//============================================================================
// Trivial mode helpers and leading nontrivial eigenvalue
//============================================================================

// vec(I)/sqrt(N): stationary mode of every unital channel here.
Vector maximally_mixed_direction(int n_dim);

// Unit vector on the (0,0) Fourier mode.
Vector koopman_trivial_direction(int cutoff);

struct Lambda1Result {
  cxd value;
  double residual = 0.0;
  std::string backend;  // "dense" or "iterative"
  Vector right_mode;    // iterative backend only fills this when asked
};

Lambda1Result lambda1_dense(const Matrix& m, const Vector& trivial_dir);
Lambda1Result lambda1_iterative(const LinearOp& op, const Vector& trivial_dir,
                                TopKOptions opt, bool want_mode = false);

//============================================================================
// Sweeps
//============================================================================

struct SweepPoint {
  double alpha;
  double lambda1_abs;
  std::string backend;
  double residual;
};

std::vector<SweepPoint> lambda1_sweep_classical(int cutoff, double b, Axis axis,
                                                const std::vector<double>& alphas,
                                                const TopKOptions& opt);

//============================================================================
// Entangling power and ring radii
//============================================================================

// E(U) = 1 - tr[(U^R1 U^R1-dagger)^2] / N^4 for bipartite U.
double operator_entanglement(const Matrix& u);

// e_p(U) = [E(U) + E(US) - E(S)] / E(S), E(S) = 1 - 1/N^2.
double entangling_power(const Matrix& u);

// Same quantity for the coupled-rotor family from the dephasing diagonal:
// e_p = (N^2 - sum|a_ij|^2) / (N^2 - 1). O(N^3), no channel assembly.
double entangling_power_coupled(int n_dim, double b);

// Large-N stationary-phase form 1 - 2 int_0^1 x J0^2((bN/pi) sin(pi x)) dx.
double ep_bessel_asymptotic(int n_dim, double b);

struct RingRadii {
  double r_in = 0.0;
  double r_out = 0.0;
};

// r_out^2 = (||M||_F^2 - 1)/(N^2-1); 1/r_in^2 = ||pinv(M - moon moon^H)||_F^2
// / (N^2-1), singular values below `cutoff` dropped. Dense route (SVD).
RingRadii ring_radii(const Matrix& channel, double cutoff = 1e-12);

// Closed form for the factored family: singular values of the deflated
// channel are {1 x(N-1)} u {|a_ij|, i != j}.
RingRadii ring_radii_coupled(int n_dim, double b, double cutoff = 1e-12);

// Fraction of the given nontrivial eigenvalues inside the padded annulus.
double annulus_occupancy(const std::vector<cxd>& values, const RingRadii& r,
                         double pad);

inline double annulus_area(const RingRadii& r) {
  return kPi * (r.r_out * r.r_out - r.r_in * r.r_in);
}

}  // namespace rotorchan
