#include "rotorchan/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/QR>

#include "rotorchan/bessel.hpp"
#include "rotorchan/eig.hpp"

namespace rotorchan {

//============================================================================
// Unitaries
//============================================================================

Matrix build_local_unitary(int n_dim, double alpha) {
  if (n_dim < 2 || (n_dim % 2) != 0)
    throw ConfigError("local unitary needs even N >= 2, got N=" +
                      std::to_string(n_dim));
  const double inv_n = 1.0 / n_dim;
  const cxd pref = std::polar(std::sqrt(inv_n), -kPi / 4.0);
  Matrix u(n_dim, n_dim);
  for (int col = 0; col < n_dim; ++col) {
    cxd kick = std::polar(1.0, (n_dim * alpha / kTwoPi) *
                                   std::cos(kTwoPi * col * inv_n));
    for (int row = 0; row < n_dim; ++row) {
      double d = col - row;
      u(row, col) = pref * std::polar(1.0, kPi * d * d * inv_n) * kick;
    }
  }
  return u;
}

Vector interaction_phases(int n_dim, double b) {
  if (n_dim < 2 || (n_dim % 2) != 0)
    throw ConfigError("interaction gate needs even N >= 2");
  Vector diag(static_cast<Eigen::Index>(n_dim) * n_dim);
  for (int n1 = 0; n1 < n_dim; ++n1)
    for (int n2 = 0; n2 < n_dim; ++n2)
      diag(static_cast<Eigen::Index>(n1) * n_dim + n2) = std::polar(
          1.0, (n_dim * b / kTwoPi) * std::cos(kTwoPi * (n1 + n2) / n_dim));
  return diag;
}

Matrix build_coupled_unitary(int n_dim, const MapParams& mp) {
  Matrix u1 = build_local_unitary(n_dim, mp.alpha1);
  Matrix u2 = build_local_unitary(n_dim, mp.alpha2);
  Vector ub = interaction_phases(n_dim, mp.b);
  const Eigen::Index nn = static_cast<Eigen::Index>(n_dim) * n_dim;
  Matrix u(nn, nn);
  for (int i = 0; i < n_dim; ++i)
    for (int a = 0; a < n_dim; ++a)
      for (int j = 0; j < n_dim; ++j)
        for (int b2 = 0; b2 < n_dim; ++b2)
          u(static_cast<Eigen::Index>(i) * n_dim + a,
            static_cast<Eigen::Index>(j) * n_dim + b2) =
              u1(i, j) * u2(a, b2) * ub(static_cast<Eigen::Index>(j) * n_dim + b2);
  return u;
}

//============================================================================
// Dephasing diagonal
//============================================================================

Matrix dephasing_matrix(int n_dim, double b) {
  // phi(k,l) evaluated once; a(i,j) = (1/N) sum_l e^{i(phi_jl - phi_il)}.
  RealMatrix phi(n_dim, n_dim);
  for (int k = 0; k < n_dim; ++k)
    for (int l = 0; l < n_dim; ++l)
      phi(k, l) = (n_dim * b / kTwoPi) * std::cos(kTwoPi * (k + l) / n_dim);
  Matrix a(n_dim, n_dim);
  for (int i = 0; i < n_dim; ++i) {
    a(i, i) = 1.0;
    for (int j = i + 1; j < n_dim; ++j) {
      cxd acc = 0.0;
      for (int l = 0; l < n_dim; ++l)
        acc += std::polar(1.0, phi(j, l) - phi(i, l));
      acc /= n_dim;
      a(i, j) = acc;
      a(j, i) = std::conj(acc);
    }
  }
  return a;
}

Matrix dephasing_matrix_bessel(int n_dim, double b) {
  Matrix a(n_dim, n_dim);
  for (int i = 0; i < n_dim; ++i)
    for (int j = 0; j < n_dim; ++j)
      a(i, j) = bessel_j(
          0, (b * n_dim / kPi) * std::sin(kPi * (i - j) / n_dim));
  return a;
}

//============================================================================
// Channel builders
//============================================================================

Matrix build_channel(const Matrix& u) {
  const int n = bipartite_side(u);
  Matrix r1 = realign_r1(u);
  Matrix prod = (r1.adjoint() * r1) / double(n);
  return realign_r2(prod);
}

Matrix build_channel_fast(int n_dim, double alpha1, double b) {
  Matrix u1 = build_local_unitary(n_dim, alpha1);
  Matrix a = dephasing_matrix(n_dim, b);
  const Eigen::Index nn = static_cast<Eigen::Index>(n_dim) * n_dim;
  Matrix m(nn, nn);
  for (int i = 0; i < n_dim; ++i)
    for (int j = 0; j < n_dim; ++j) {
      const Eigen::Index row = static_cast<Eigen::Index>(i) * n_dim + j;
      const cxd aij = a(i, j);
      for (int k = 0; k < n_dim; ++k)
        for (int l = 0; l < n_dim; ++l)
          m(row, static_cast<Eigen::Index>(k) * n_dim + l) =
              aij * std::conj(u1(k, i)) * u1(l, j);
    }
  return m;
}

Matrix build_complementary_channel(const Matrix& u) {
  const int n = bipartite_side(u);
  Matrix t2 = partial_transpose_2(u);
  Matrix prod = (t2 * t2.adjoint()) / double(n);
  return realign_r1(prod);
}

Matrix brute_force_channel_oracle(const Matrix& u) {
  const int n = bipartite_side(u);
  if (u.rows() > 4096)
    throw ConfigError("brute-force channel oracle limited to dim <= 4096");
  const Eigen::Index nn = u.rows();
  Matrix m(nn, nn);
  Matrix basis_op = Matrix::Zero(n, n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      basis_op(j, k) = 1.0;
      // W = U^dag (E_jk (x) 1/N) U, then column (j,k) = vec(Tr_2 W).
      Matrix lifted = Matrix::Zero(nn, nn);
      for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c)
          if (basis_op(r, c) != 0.0)
            for (int al = 0; al < n; ++al)
              lifted(static_cast<Eigen::Index>(r) * n + al,
                     static_cast<Eigen::Index>(c) * n + al) =
                  basis_op(r, c) / double(n);
      Matrix w = u.adjoint() * lifted * u;
      for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) {
          cxd acc = 0.0;
          for (int al = 0; al < n; ++al)
            acc += w(static_cast<Eigen::Index>(r) * n + al,
                     static_cast<Eigen::Index>(c) * n + al);
          m(static_cast<Eigen::Index>(r) * n + c,
            static_cast<Eigen::Index>(j) * n + k) = acc;
        }
      basis_op(j, k) = 0.0;
    }
  return m;
}

//============================================================================
// ChannelApplier
//============================================================================

ChannelApplier::ChannelApplier(int n_dim, double alpha1, double b)
    : n_(n_dim),
      u1_(build_local_unitary(n_dim, alpha1)),
      a_(dephasing_matrix(n_dim, b)) {}

void ChannelApplier::apply(const Vector& in, Vector& out) const {
  Eigen::Map<const Matrix> a_in_rowmaj(in.data(), n_, n_);
  // in is a row-vectorized operator: component (i,j) at i*N+j. Eigen maps
  // are column-major, so the map above reads the TRANSPOSE of the operator.
  // Work with X^T throughout: out^T = (U1^dag X U1)^T .* A^T.
  Matrix xt = a_in_rowmaj;                       // X^T
  Matrix yt = u1_.transpose() * xt * u1_.conjugate();  // (U1^dag X U1)^T
  out.resize(static_cast<Eigen::Index>(n_) * n_);
  Eigen::Map<Matrix> out_t(out.data(), n_, n_);
  out_t = yt.cwiseProduct(a_.transpose());
}

//============================================================================
// Kraus / Choi
//============================================================================

KrausSet kraus_decomposition(int n_dim, double b) {
  KrausSet ks;
  ks.n_dim = n_dim;
  ks.phases.resize(n_dim, n_dim);
  for (int k = 0; k < n_dim; ++k)
    for (int l = 0; l < n_dim; ++l)
      ks.phases(k, l) =
          (n_dim * b / kTwoPi) * std::cos(kTwoPi * (k + l) / n_dim);
  return ks;
}

Matrix kraus_reconstruct_channel(const KrausSet& ks) {
  const int n = ks.n_dim;
  const Eigen::Index nn = static_cast<Eigen::Index>(n) * n;
  Matrix m = Matrix::Zero(nn, nn);
  const double inv_n = 1.0 / n;
  for (int l = 0; l < n; ++l) {
    // E_l = diag(e^{-i phi(k,l)})/sqrt(N); E_l (x) conj(E_l) is diagonal.
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const Eigen::Index idx = static_cast<Eigen::Index>(i) * n + j;
        m(idx, idx) +=
            inv_n * std::polar(1.0, ks.phases(j, l) - ks.phases(i, l));
      }
  }
  return m;
}

Matrix choi_matrix(const Matrix& channel) { return realign_r2(channel); }

double choi_min_eigenvalue(const Matrix& channel) {
  Matrix c = choi_matrix(channel);
  Matrix herm = 0.5 * (c + c.adjoint());
  RealVector w = eigh_dense(herm);
  return w.minCoeff();
}

DualityReport classify_duality(const Matrix& u, double tol) {
  const Eigen::Index nn = u.rows();
  DualityReport rep;
  Matrix r1 = realign_r1(u);
  Matrix t2 = partial_transpose_2(u);
  rep.r1_residual =
      (r1 * r1.adjoint() - Matrix::Identity(nn, nn)).cwiseAbs().maxCoeff();
  rep.t2_residual =
      (t2 * t2.adjoint() - Matrix::Identity(nn, nn)).cwiseAbs().maxCoeff();
  rep.dual_unitary = rep.r1_residual <= tol;
  rep.t_dual = rep.t2_residual <= tol;
  rep.two_unitary = rep.dual_unitary && rep.t_dual;
  return rep;
}

//============================================================================
// Submatrix bound
//============================================================================

SubmatrixResult build_submatrix(int n_dim, double alpha1, double b) {
  Matrix u1 = build_local_unitary(n_dim, alpha1);
  DenseEig eg = eig_dense(u1, true);

  // Eigenphases in [0, 2pi); stable sort with overlap tie-break keeps the
  // basis deterministic across runs.
  std::vector<int> order(n_dim);
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> phase(n_dim), overlap0(n_dim);
  for (int k = 0; k < n_dim; ++k) {
    double ph = std::arg(eg.values(k));
    if (ph < 0) ph += kTwoPi;
    phase[k] = ph;
    overlap0[k] = std::abs(eg.right(0, k));
  }
  std::stable_sort(order.begin(), order.end(), [&](int x, int y) {
    if (std::abs(phase[x] - phase[y]) > 1e-12) return phase[x] < phase[y];
    return overlap0[x] > overlap0[y];
  });

  SubmatrixResult out;
  out.eigvecs.resize(n_dim, n_dim);
  out.eigenphases.resize(n_dim);
  for (int k = 0; k < n_dim; ++k) {
    Vector v = eg.right.col(order[k]);
    v /= v.norm();
    out.eigvecs.col(k) = v;
    out.eigenphases(k) = phase[order[k]];
  }

  // Vectors inside a degenerate eigenphase cluster come out of the general
  // eigensolver linearly independent but not orthogonal; the compression
  // below needs an orthonormal family, so re-orthonormalize each cluster.
  constexpr double kDegenerateGap = 1e-7;
  std::vector<std::pair<int, int>> groups;  // [begin, end)
  int begin = 0;
  for (int k = 1; k <= n_dim; ++k) {
    if (k == n_dim || out.eigenphases(k) - out.eigenphases(k - 1) > kDegenerateGap) {
      groups.emplace_back(begin, k);
      begin = k;
    }
  }
  const bool wraps = groups.size() > 1 &&
                     out.eigenphases(0) + kTwoPi - out.eigenphases(n_dim - 1) < kDegenerateGap;
  auto orthonormalize = [&](const std::vector<int>& cols) {
    if (cols.size() < 2) return;
    Matrix block(n_dim, cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c) block.col(c) = out.eigvecs.col(cols[c]);
    Eigen::HouseholderQR<Matrix> qr(block);
    Matrix q = qr.householderQ() * Matrix::Identity(n_dim, Eigen::Index(cols.size()));
    for (std::size_t c = 0; c < cols.size(); ++c) out.eigvecs.col(cols[c]) = q.col(c);
  };
  for (std::size_t g = 0; g < groups.size(); ++g) {
    if (wraps && (g == 0 || g + 1 == groups.size())) continue;
    std::vector<int> cols;
    for (int k = groups[g].first; k < groups[g].second; ++k) cols.push_back(k);
    orthonormalize(cols);
  }
  if (wraps) {
    std::vector<int> cols;  // phase 0 and 2pi clusters are one eigenvalue
    for (int k = groups.back().first; k < groups.back().second; ++k) cols.push_back(k);
    for (int k = groups.front().first; k < groups.front().second; ++k) cols.push_back(k);
    orthonormalize(cols);
  }

  // ms(k',k) = sum_ij a(i,j) conj(W_k'(i,j)) W_k(i,j), W_k = v_k v_k^dag.
  Matrix a = dephasing_matrix(n_dim, b);
  out.ms.resize(n_dim, n_dim);
  for (int kp = 0; kp < n_dim; ++kp)
    for (int k = 0; k < n_dim; ++k) {
      cxd acc = 0.0;
      for (int i = 0; i < n_dim; ++i)
        for (int j = 0; j < n_dim; ++j) {
          cxd wkp = out.eigvecs(i, kp) * std::conj(out.eigvecs(j, kp));
          cxd wk = out.eigvecs(i, k) * std::conj(out.eigvecs(j, k));
          acc += a(i, j) * std::conj(wkp) * wk;
        }
      out.ms(kp, k) = acc;
    }
  return out;
}

double submatrix_lambda_max(const Matrix& ms) {
  const Eigen::Index n = ms.rows();
  Vector w = Vector::Constant(n, 1.0 / std::sqrt(double(n)));
  Matrix proj = Matrix::Identity(n, n) - w * w.adjoint();
  Matrix deflated = proj * ms * proj;  // trivial direction pinned to zero
  RealVector vals = eigh_dense(deflated);
  return vals.maxCoeff();
}

//============================================================================
// Correlations
//============================================================================

std::vector<cxd> quantum_correlation(const Matrix& a0, const Matrix& a,
                                     const ChannelApplier& ch, int t_max) {
  Vector state = vec(a);
  Vector bra = vec(a0.adjoint());
  std::vector<cxd> series;
  series.reserve(t_max + 1);
  series.push_back(bra.dot(state));  // Eigen dot conjugates the left argument
  Vector next;
  for (int t = 1; t <= t_max; ++t) {
    ch.apply(state, next);
    state.swap(next);
    series.push_back(bra.dot(state));
  }
  return series;
}

cxd quantum_correlation_oracle(const Matrix& a0, const Matrix& a,
                               const Matrix& u) {
  const int n = bipartite_side(u);
  const Eigen::Index nn = u.rows();
  Matrix lifted = Matrix::Zero(nn, nn);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c)
      for (int al = 0; al < n; ++al)
        lifted(static_cast<Eigen::Index>(r) * n + al,
               static_cast<Eigen::Index>(c) * n + al) = a(r, c) / double(n);
  Matrix w = u.adjoint() * lifted * u;
  cxd acc = 0.0;
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c)
      for (int al = 0; al < n; ++al)
        acc += a0(c, r) * w(static_cast<Eigen::Index>(r) * n + al,
                            static_cast<Eigen::Index>(c) * n + al);
  return acc;
}

}  // namespace rotorchan
