#include <algorithm>
#include <cmath>
#include <numeric>

#include "rotorchan/eig.hpp"
#include "rotorchan/rng.hpp"
#include "rotorchan/spectral.hpp"

// Krylov-Schur restarted Arnoldi for a few largest-modulus eigenpairs of a
// matrix-free operator. The subspace is compressed through an ordered Schur
// form of the small Rayleigh matrix, so locked directions stay in the basis
// between restarts. Convergence is decided on true residuals ||Ax - wx||.

namespace rotorchan {

namespace {

Vector random_start(Eigen::Index n, uint64_t seed) {
  auto rng = make_stream(seed, kStreamKrylovStart);
  std::normal_distribution<double> g(0.0, 1.0);
  Vector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = cxd(g(rng), g(rng));
  v.normalize();
  return v;
}

SpectralDecomposition dense_fallback(const LinearOp& op, int k) {
  Matrix m = Matrix::Zero(op.dim, op.dim);
  Vector e = Vector::Zero(op.dim);
  Vector col;
  for (Eigen::Index j = 0; j < op.dim; ++j) {
    e(j) = 1.0;
    op.apply(e, col);
    m.col(j) = col;
    e(j) = 0.0;
  }
  SpectralDecomposition sd = full_spectrum(m, true);
  SpectralDecomposition out;
  const int kk = std::min<int>(k, static_cast<int>(sd.values.size()));
  out.values.assign(sd.values.begin(), sd.values.begin() + kk);
  out.right = sd.right.leftCols(kk);
  out.residuals.assign(kk, 0.0);
  if (!sd.residuals.empty())
    out.residuals.assign(sd.residuals.begin(), sd.residuals.begin() + kk);
  sort_and_pair(out);
  return out;
}

}  // namespace

SpectralDecomposition top_k_spectrum(const LinearOp& op, const TopKOptions& opt) {
  const Eigen::Index n = op.dim;
  if (n < 2) throw ConfigError("top_k_spectrum needs dim >= 2");
  const int k = std::max(1, std::min<int>(opt.k, static_cast<int>(n) - 2));
  if (n <= 256 || 3 * k + 16 >= n) return dense_fallback(op, k);

  int m = opt.subspace > 0 ? opt.subspace : std::max(2 * k + 16, 40);
  m = std::min<int>(m, static_cast<int>(n) - 1);
  const int keep = std::min(k + 8, m - 2);  // compression size between restarts

  Matrix v_basis(n, m + 1);
  Matrix h = Matrix::Zero(m + 1, m);
  v_basis.col(0) = random_start(n, opt.seed);
  int size = 0;  // currently factored columns

  Vector w, coeff, coeff2;
  for (int restart = 0; restart <= opt.max_restarts; ++restart) {
    // Expand the Arnoldi factorization to m columns (classical Gram-Schmidt
    // with one reorthogonalization pass).
    int m_eff = m;
    bool invariant = false;
    for (int j = size; j < m; ++j) {
      op.apply(v_basis.col(j), w);
      coeff.noalias() = v_basis.leftCols(j + 1).adjoint() * w;
      w.noalias() -= v_basis.leftCols(j + 1) * coeff;
      coeff2.noalias() = v_basis.leftCols(j + 1).adjoint() * w;
      w.noalias() -= v_basis.leftCols(j + 1) * coeff2;
      coeff += coeff2;
      h.block(0, j, j + 1, 1) = coeff;
      double beta = w.norm();
      h(j + 1, j) = beta;
      if (beta < 1e-13) {  // exact invariant subspace
        invariant = true;
        m_eff = j + 1;
        break;
      }
      v_basis.col(j + 1) = w / beta;
    }
    const double beta_last = invariant ? 0.0 : std::abs(h(m_eff, m_eff - 1));

    // Ordered Schur form of the Rayleigh block, largest moduli leading.
    SchurResult sr = schur_dense(h.topLeftCorner(m_eff, m_eff));
    std::vector<int> order(m_eff);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      return std::abs(sr.values(a)) > std::abs(sr.values(b));
    });
    const int p = invariant ? m_eff : std::min(keep, m_eff - 1);
    std::vector<int> select(m_eff, 0);
    for (int i = 0; i < p; ++i) select[order[i]] = 1;
    schur_select_leading(sr, select);

    // Second pass pins the k largest inside the leading block, so the
    // extracted set really is the global top k by modulus.
    const int kk = std::min(p, k);
    std::vector<int> order2(m_eff);
    std::iota(order2.begin(), order2.end(), 0);
    std::sort(order2.begin(), order2.end(), [&](int a, int b) {
      return std::abs(sr.values(a)) > std::abs(sr.values(b));
    });
    std::fill(select.begin(), select.end(), 0);
    for (int i = 0; i < kk; ++i) select[order2[i]] = 1;
    schur_select_leading(sr, select);

    // Ritz extraction from the leading block.
    Matrix t_lead = sr.t.topLeftCorner(kk, kk);
    DenseEig small = eig_dense(t_lead, true);
    Matrix basis = v_basis.leftCols(m_eff) * sr.q.leftCols(kk);
    Matrix ritz = basis * small.right;

    SpectralDecomposition sd;
    sd.values.assign(small.values.data(), small.values.data() + kk);
    sd.right.resize(n, kk);
    sd.residuals.resize(kk);
    bool converged = true;
    for (int i = 0; i < kk; ++i) {
      Vector x = ritz.col(i).normalized();
      sd.right.col(i) = x;
      op.apply(x, w);
      sd.residuals[i] = (w - sd.values[i] * x).norm();
      if (sd.residuals[i] > opt.tol * std::max(std::abs(sd.values[i]), 1e-8))
        converged = false;
    }
    if (converged || invariant || restart == opt.max_restarts) {
      if (!converged && !invariant)
        throw SolverError("krylov-schur: no convergence after " +
                          std::to_string(opt.max_restarts) + " restarts");
      sort_and_pair(sd);
      if (static_cast<int>(sd.values.size()) > k) {
        sd.values.resize(k);
        sd.right = sd.right.leftCols(k).eval();
        sd.residuals.resize(k);
        sort_and_pair(sd);  // refresh pair indices after the slice
      }
      return sd;
    }

    // Krylov-Schur truncation: keep p Schur columns plus the residual vector.
    Matrix vq = v_basis.leftCols(m_eff) * sr.q.leftCols(p);
    v_basis.leftCols(p) = vq;
    v_basis.col(p) = v_basis.col(m_eff);  // v_{m+1} carries over
    h.setZero();
    h.topLeftCorner(p, p) = sr.t.topLeftCorner(p, p);
    if (!invariant)
      h.block(p, 0, 1, p) = beta_last * sr.q.row(m_eff - 1).leftCols(p);
    size = p;
  }
  throw SolverError("krylov-schur: unreachable");
}

}  // namespace rotorchan
