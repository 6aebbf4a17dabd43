#include "rotorchan/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "rotorchan/bessel.hpp"
#include "rotorchan/eig.hpp"

namespace rotorchan {

//============================================================================
// Sorting and pairing
//============================================================================

void sort_and_pair(SpectralDecomposition& sd, double pair_tol) {
  const size_t n = sd.values.size();
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  // Stable tie-break by descending imaginary part keeps conjugate partners
  // adjacent and run-to-run deterministic.
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    double ma = std::abs(sd.values[a]), mb = std::abs(sd.values[b]);
    if (ma != mb) return ma > mb;
    return sd.values[a].imag() > sd.values[b].imag();
  });

  SpectralDecomposition out;
  out.full = sd.full;
  out.values.resize(n);
  if (sd.right.size()) out.right.resize(sd.right.rows(), n);
  if (sd.left.size()) out.left.resize(sd.left.rows(), n);
  if (!sd.residuals.empty()) out.residuals.resize(n);
  for (size_t i = 0; i < n; ++i) {
    out.values[i] = sd.values[order[i]];
    if (sd.right.size()) out.right.col(i) = sd.right.col(order[i]);
    if (sd.left.size()) out.left.col(i) = sd.left.col(order[i]);
    if (!sd.residuals.empty()) out.residuals[i] = sd.residuals[order[i]];
  }

  out.real_flag.resize(n);
  out.pair_index.assign(n, -1);
  for (size_t i = 0; i < n; ++i) {
    out.real_flag[i] =
        std::abs(out.values[i].imag()) <= pair_tol * (1.0 + std::abs(out.values[i]));
    if (out.real_flag[i]) continue;
    // Conjugate partner: nearest match to conj(w_i); only accept real pairs.
    cxd target = std::conj(out.values[i]);
    double best = pair_tol * (1.0 + std::abs(out.values[i]));
    for (size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      double d = std::abs(out.values[j] - target);
      if (d < best) {
        best = d;
        out.pair_index[i] = static_cast<int>(j);
      }
    }
  }
  sd = std::move(out);
}

//============================================================================
// Dense spectra
//============================================================================

namespace {

void normalize_pairs(SpectralDecomposition& sd) {
  if (!sd.right.size()) return;
  for (Eigen::Index i = 0; i < sd.right.cols(); ++i) {
    sd.right.col(i).normalize();
    if (sd.left.size()) {
      // Scale the left vector so <u|v> = 1; skip near-defective pairs.
      cxd ip = sd.left.col(i).dot(sd.right.col(i));
      if (std::abs(ip) > 1e-12) sd.left.col(i) /= std::conj(ip);
    }
  }
}

}  // namespace

SpectralDecomposition full_spectrum(const Matrix& m, bool with_vectors) {
  if (m.rows() > 10000)
    throw ConfigError("dense full spectrum capped at dim 10000, got " +
                      std::to_string(m.rows()));
  DenseEig eg = eig_dense(m, with_vectors);
  SpectralDecomposition sd;
  sd.full = true;
  sd.values.assign(eg.values.data(), eg.values.data() + eg.values.size());
  if (with_vectors) {
    sd.right = std::move(eg.right);
    sd.left = std::move(eg.left);
    if (m.rows() <= 1024) {  // explicit residuals only where the n^3 pass is cheap
      sd.residuals.resize(sd.values.size());
      Matrix r = m * sd.right;
      for (size_t i = 0; i < sd.values.size(); ++i)
        sd.residuals[i] = (r.col(i) - sd.values[i] * sd.right.col(i)).norm();
    }
  }
  normalize_pairs(sd);
  sort_and_pair(sd);
  return sd;
}

SpectralDecomposition full_spectrum(const SparseRealMatrix& m, bool with_vectors) {
  Matrix dense = Matrix::Zero(m.rows(), m.cols());
  for (int k = 0; k < m.outerSize(); ++k)
    for (SparseRealMatrix::InnerIterator it(m, k); it; ++it)
      dense(it.row(), it.col()) = it.value();
  return full_spectrum(dense, with_vectors);
}

//============================================================================
// Matrix-free operators
//============================================================================

LinearOp make_op(const Matrix& dense) {
  LinearOp op;
  op.dim = dense.rows();
  op.apply = [&dense](const Vector& in, Vector& out) { out.noalias() = dense * in; };
  return op;
}

LinearOp make_op(const SparseRealMatrix& sparse) {
  LinearOp op;
  op.dim = sparse.rows();
  // Real sparse times complex vector, done on the two real parts to avoid
  // materializing a complex copy of the matrix per apply.
  op.apply = [&sparse](const Vector& in, Vector& out) {
    RealVector yr = sparse * in.real().matrix().eval();
    RealVector yi = sparse * in.imag().matrix().eval();
    out = yr.cast<cxd>() + cxd(0.0, 1.0) * yi.cast<cxd>();
  };
  return op;
}

LinearOp make_op(const ChannelApplier& ch) {
  LinearOp op;
  op.dim = ch.dim();
  op.apply = [&ch](const Vector& in, Vector& out) { ch.apply(in, out); };
  return op;
}

LinearOp deflate_op(LinearOp op, Vector dir) {
  LinearOp out;
  out.dim = op.dim;
  out.apply = [inner = std::move(op), d = std::move(dir)](const Vector& in,
                                                          Vector& y) {
    Vector x = in - d * d.dot(in);
    inner.apply(x, y);
    y -= d * d.dot(y);
  };
  return out;
}

//============================================================================
// Trivial directions and lambda_1
//============================================================================

Vector maximally_mixed_direction(int n_dim) {
  Vector v = Vector::Zero(static_cast<Eigen::Index>(n_dim) * n_dim);
  const double w = 1.0 / std::sqrt(double(n_dim));
  for (int i = 0; i < n_dim; ++i)
    v(static_cast<Eigen::Index>(i) * n_dim + i) = w;
  return v;
}

Vector koopman_trivial_direction(int cutoff) {
  Vector v = Vector::Zero(fourier_dim(cutoff));
  v(fourier_index(0, 0, cutoff)) = 1.0;
  return v;
}

Lambda1Result lambda1_dense(const Matrix& m, const Vector& trivial_dir) {
  // Rank-1 subtraction replaces the trivial eigenvalue by 0 and leaves the
  // rest of the spectrum untouched (dir is a two-sided eigenvector).
  Matrix deflated = m - trivial_dir * trivial_dir.adjoint();
  SpectralDecomposition sd = full_spectrum(deflated, false);
  Lambda1Result out;
  out.value = sd.values.front();
  out.backend = "dense";
  return out;
}

Lambda1Result lambda1_iterative(const LinearOp& op, const Vector& trivial_dir,
                                TopKOptions opt, bool want_mode) {
  LinearOp defl = deflate_op(op, trivial_dir);
  SpectralDecomposition sd = top_k_spectrum(defl, opt);
  Lambda1Result out;
  out.value = sd.values.front();
  out.residual = sd.residuals.empty() ? 0.0 : sd.residuals.front();
  out.backend = "iterative";
  if (want_mode && sd.right.size()) out.right_mode = sd.right.col(0);
  return out;
}

std::vector<SweepPoint> lambda1_sweep_classical(int cutoff, double b, Axis axis,
                                                const std::vector<double>& alphas,
                                                const TopKOptions& opt) {
  std::vector<SweepPoint> rows(alphas.size());
  const Vector trivial = koopman_trivial_direction(cutoff);
  for (size_t i = 0; i < alphas.size(); ++i) {
    MapParams mp;
    mp.alpha1 = alphas[i];
    mp.alpha2 = alphas[i];
    mp.b = b;
    KoopmanChannel chan = build_koopman_channel(cutoff, mp, axis);
    LinearOp op = make_op(chan.matrix);
    Lambda1Result r = lambda1_iterative(op, trivial, opt);
    rows[i] = {alphas[i], std::abs(r.value), r.backend, r.residual};
  }
  return rows;
}

//============================================================================
// Entangling power
//============================================================================

double operator_entanglement(const Matrix& u) {
  const int n = bipartite_side(u);
  Matrix r1 = realign_r1(u);
  Matrix g = r1 * r1.adjoint();
  double tr2 = (g * g).trace().real();
  double n2 = double(n) * n;
  return 1.0 - tr2 / (n2 * n2);
}

double entangling_power(const Matrix& u) {
  const int n = bipartite_side(u);
  Matrix us = u * swap_gate(n);
  double es = 1.0 - 1.0 / (double(n) * n);
  return (operator_entanglement(u) + operator_entanglement(us) - es) / es;
}

double entangling_power_coupled(int n_dim, double b) {
  Matrix a = dephasing_matrix(n_dim, b);
  double sum2 = a.cwiseAbs2().sum();
  double n2 = double(n_dim) * n_dim;
  return (n2 - sum2) / (n2 - 1.0);
}

double ep_bessel_asymptotic(int n_dim, double b) {
  const double scale = b * n_dim / kPi;
  auto integrand = [scale](double x) {
    double j0 = bessel_j(0, scale * std::sin(kPi * x));
    return x * j0 * j0;
  };
  double integral = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
      integrand, 0.0, 1.0, 12, 1e-12);
  return 1.0 - 2.0 * integral;
}

//============================================================================
// Ring radii
//============================================================================

RingRadii ring_radii(const Matrix& channel, double cutoff) {
  const Eigen::Index dim = channel.rows();
  const int n_dim = static_cast<int>(std::llround(std::sqrt(double(dim))));
  Vector moon = maximally_mixed_direction(n_dim);
  RingRadii out;
  const double denom = double(dim) - 1.0;
  out.r_out = std::sqrt((channel.squaredNorm() - 1.0) / denom);
  Matrix deflated = channel - moon * moon.adjoint();
  Eigen::BDCSVD<Matrix> svd(deflated);
  double acc = 0.0;
  const auto& sv = svd.singularValues();
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > cutoff) acc += 1.0 / (sv(i) * sv(i));
  out.r_in = std::sqrt(denom / acc);
  return out;
}

RingRadii ring_radii_coupled(int n_dim, double b, double cutoff) {
  Matrix a = dephasing_matrix(n_dim, b);
  const double denom = double(n_dim) * n_dim - 1.0;
  double sum_sq = n_dim - 1.0;   // N-1 unit singular values
  double sum_inv = n_dim - 1.0;  // and their reciprocals
  for (int i = 0; i < n_dim; ++i)
    for (int j = 0; j < n_dim; ++j) {
      if (i == j) continue;
      double s = std::abs(a(i, j));
      sum_sq += s * s;
      if (s > cutoff) sum_inv += 1.0 / (s * s);
    }
  return {std::sqrt(denom / sum_inv), std::sqrt(sum_sq / denom)};
}

double annulus_occupancy(const std::vector<cxd>& values, const RingRadii& r,
                         double pad) {
  if (values.empty()) return 0.0;
  int inside = 0;
  for (const cxd& v : values) {
    double m = std::abs(v);
    if (m >= r.r_in - pad && m <= r.r_out + pad) ++inside;
  }
  return double(inside) / double(values.size());
}

}  // namespace rotorchan
