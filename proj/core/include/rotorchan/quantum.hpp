#pragma once

#include <vector>

#include "rotorchan/reshape.hpp"
#include "rotorchan/types.hpp"

namespace rotorchan {

//============================================================================
// Unitaries of the kicked pair
//============================================================================

// Single-rotor propagator on H_N, N even:
//   <n'|U|n> = e^{-i pi/4}/sqrt(N) * exp(i pi (n-n')^2 / N)
//                                  * exp(i (N alpha / 2pi) cos(2pi n / N)).
// Commutes with parity n -> (-n) mod N. Throws ConfigError for odd N or N < 2.
Matrix build_local_unitary(int n_dim, double alpha);

// Coupling gate, diagonal in the product position basis:
//   phase(n1,n2) = (N b / 2pi) cos(2pi (n1+n2)/N).
// Returned as the length-N^2 diagonal, row-wise composite index n1*N+n2.
Vector interaction_phases(int n_dim, double b);

// Dense N^2 x N^2 form of the full floquet unitary (U1 (x) U2) * Ub.
Matrix build_coupled_unitary(int n_dim, const MapParams& mp);

//============================================================================
// Single-rotor channel
//============================================================================

// Hadamard (dephasing) matrix of the reduced channel: entry (i,j) multiplies
// operator element A_ij,
//   a(i,j) = (1/N) sum_l exp(i [phi(j,l) - phi(i,l)]),
// phi(k,l) = (N b / 2pi) cos(2pi (k+l)/N). Exact complex l-sum; Hermitian
// with unit diagonal.
Matrix dephasing_matrix(int n_dim, double b);

// Stationary-phase shortcut a(i,j) ~ J0((bN/pi) sin(pi (i-j)/N)), real; kept
// for comparison only, production code uses the exact sum.
Matrix dephasing_matrix_bessel(int n_dim, double b);

// Reduced channel of a bipartite unitary, M(U) = (1/N) [U^R1-dagger U^R1]^R2,
// acting on row-vectorized operators of the first factor.
Matrix build_channel(const Matrix& u);

// Factored form for the coupled-rotor family: M = D_b (U1-dagger (x) U1^T).
// Equals build_channel(build_coupled_unitary(...)) and is alpha2-independent.
Matrix build_channel_fast(int n_dim, double alpha1, double b);

// Complementary channel M_C(U) = (1/N) [U^T2 U^T2-dagger]^R1 = M(U S).
Matrix build_complementary_channel(const Matrix& u);

// Independent cross-check: column (j,k) is vec(Tr_2[U-dagger (E_jk (x) 1/N) U])
// assembled operator by operator. Quartic cost, guarded to dim(U) <= 4096.
Matrix brute_force_channel_oracle(const Matrix& u);

//============================================================================
// Matrix-free application
//============================================================================

// Holds the N x N factors of the reduced channel; apply() is the O(N^3)
// matvec  a' = hadamard( U1-dagger unvec(a) U1 ).
class ChannelApplier {
 public:
  ChannelApplier(int n_dim, double alpha1, double b);

  Eigen::Index dim() const { return static_cast<Eigen::Index>(n_) * n_; }
  int n_dim() const { return n_; }
  const Matrix& u1() const { return u1_; }
  const Matrix& hadamard() const { return a_; }

  void apply(const Vector& in, Vector& out) const;

 private:
  int n_;
  Matrix u1_;
  Matrix a_;
};

//============================================================================
// Kraus / Choi structure
//============================================================================

// Kraus family of the interaction-only channel: E_l = D_l-dagger / sqrt(N)
// with D_l = diag_k exp(i phi(k,l)). Columns of `phases` hold phi(.,l).
struct KrausSet {
  int n_dim = 0;
  RealMatrix phases;  // N x N, column l = phases of D_l
};

KrausSet kraus_decomposition(int n_dim, double b);

// sum_l E_l (x) conj(E_l), for reconstruction tests.
Matrix kraus_reconstruct_channel(const KrausSet& ks);

// Choi form C = M^R2; CPTP requires the Hermitian part to be PSD.
Matrix choi_matrix(const Matrix& channel);

double choi_min_eigenvalue(const Matrix& channel);

// max |(X X^H - I)_ij| for X = U^R1 (dual) and X = U^T2 (T-dual).
struct DualityReport {
  double r1_residual = 0.0;
  double t2_residual = 0.0;
  bool dual_unitary = false;
  bool t_dual = false;
  bool two_unitary = false;
};

DualityReport classify_duality(const Matrix& u, double tol = 1e-10);

//============================================================================
// Submatrix bound
//============================================================================

// Hermitian compression of the channel onto span{ |phi_k> (x) |phi_k*> },
// phi_k the U1 eigenvectors sorted by eigenphase in [0, 2pi) (ties broken by
// descending |<0|phi>|). Entry (k',k) = <phi_k' phi_k'* | D_b | phi_k phi_k*>.
struct SubmatrixResult {
  Matrix ms;               // N x N Hermitian
  Matrix eigvecs;          // sorted U1 eigenvectors, columns
  RealVector eigenphases;  // sorted phases in [0, 2pi)
};

SubmatrixResult build_submatrix(int n_dim, double alpha1, double b);

// Largest eigenvalue of ms with the trivial direction (1,..,1)/sqrt(N)
// projected out; lower-bounds |lambda_1| of the full channel.
double submatrix_lambda_max(const Matrix& ms);

// Correlation series c_t = <a0-dagger | M^t | a>, t = 0..t_max, where powers
// mean repeated channel applications (M(U^t) differs from M(U)^t).
std::vector<cxd> quantum_correlation(const Matrix& a0, const Matrix& a,
                                     const ChannelApplier& ch, int t_max);

// One-step oracle Tr[(a0 (x) 1) U-dagger (a (x) 1/N) U] for cross-checks.
cxd quantum_correlation_oracle(const Matrix& a0, const Matrix& a,
                               const Matrix& u);

}  // namespace rotorchan
