#include <rotorchan/husimi.hpp>

#include <cmath>
#include <complex>

#include <rotorchan/koopman.hpp>

namespace rotorchan {

namespace {

// Unnormalized amplitude <n|qp>. The nearest image keeps the exponent above
// -pi/(4 n) for the closest basis site, so the norm never underflows.
cxd coherent_amplitude(int n_dim, int n, double q, double p) {
  cxd acc(0.0, 0.0);
  for (int k = -3; k <= 3; ++k) {
    const double x = static_cast<double>(n) / n_dim - q + k;
    acc += std::exp(cxd(-kPi * n_dim * x * x, kTwoPi * p * n_dim * x));
  }
  return acc;
}

int side_from_vec(const Vector& v) {
  const int n = static_cast<int>(std::llround(std::sqrt(static_cast<double>(v.size()))));
  if (static_cast<long long>(n) * n != v.size())
    throw ConfigError("vectorized operator length is not a perfect square");
  return n;
}

// Coherent states at all grid^2 cell centers, column index ip * grid + iq.
Matrix cell_center_states(int n_dim, int grid) {
  Matrix c(n_dim, static_cast<long long>(grid) * grid);
  for (int ip = 0; ip < grid; ++ip) {
    const double p = (ip + 0.5) / grid;
    for (int iq = 0; iq < grid; ++iq) {
      const double q = (iq + 0.5) / grid;
      c.col(static_cast<long long>(ip) * grid + iq) = coherent_state(n_dim, q, p);
    }
  }
  return c;
}

}  // namespace

Vector coherent_state(int n_dim, double q, double p) {
  if (n_dim < 2) throw ConfigError("coherent state needs dimension >= 2");
  Vector v(n_dim);
  for (int n = 0; n < n_dim; ++n) v[n] = coherent_amplitude(n_dim, n, q, p);
  v /= v.norm();
  return v;
}

Matrix coherent_state_frame(int n_dim) {
  if (n_dim < 2) throw ConfigError("coherent frame needs dimension >= 2");
  Matrix c(n_dim, static_cast<long long>(n_dim) * n_dim);
  for (int ic = 0; ic < n_dim; ++ic) {
    const double p = static_cast<double>(ic) / n_dim;
    for (int ia = 0; ia < n_dim; ++ia) {
      const double q = static_cast<double>(ia) / n_dim;
      c.col(static_cast<long long>(ic) * n_dim + ia) = coherent_state(n_dim, q, p);
    }
  }
  return c;
}

PhaseSpaceField husimi_state(const Vector& psi, int grid) {
  if (grid < 2) throw ConfigError("husimi grid must be >= 2");
  const Vector normed = psi / psi.norm();
  const Matrix c = cell_center_states(static_cast<int>(psi.size()), grid);
  PhaseSpaceField field(grid, FieldKind::Probability);
  const Vector overlaps = c.adjoint() * normed;
  for (long long g = 0; g < overlaps.size(); ++g)
    field.values[g] = std::norm(overlaps[g]);
  return field;
}

PhaseSpaceField husimi_mode(const Vector& mode, int grid) {
  if (grid < 2) throw ConfigError("husimi grid must be >= 2");
  const int n = side_from_vec(mode);
  Matrix x(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) x(i, j) = mode[static_cast<long long>(i) * n + j];
  x /= x.norm();
  const Matrix c = cell_center_states(n, grid);
  const Matrix y = x * c;
  PhaseSpaceField field(grid, FieldKind::Probability);
  for (long long g = 0; g < c.cols(); ++g)
    field.values[g] = std::norm(c.col(g).dot(y.col(g)));
  return field;
}

PhaseSpaceField fourier_mode_field(const Vector& coeff, int cutoff, int grid) {
  if (coeff.size() != fourier_dim(cutoff))
    throw ConfigError("coefficient length does not match the mode cutoff");
  if (grid <= 2 * cutoff)
    throw ConfigError("fourier raster grid must exceed twice the cutoff");
  const int w = 2 * cutoff + 1;
  const Vector normed = coeff / coeff.norm();
  Matrix cmat(w, w);
  for (int m = -cutoff; m <= cutoff; ++m)
    for (int n = -cutoff; n <= cutoff; ++n)
      cmat(m + cutoff, n + cutoff) = normed[fourier_index(m, n, cutoff)];
  // f = E_q C E_p^T with E(g, m) = exp(2 pi i x_g (m - cutoff)).
  Matrix eq(grid, w), ep(grid, w);
  for (int g = 0; g < grid; ++g) {
    const double x = (g + 0.5) / grid;
    for (int m = 0; m < w; ++m) {
      eq(g, m) = std::polar(1.0, kTwoPi * x * (m - cutoff));
      ep(g, m) = eq(g, m);
    }
  }
  const Matrix f = eq * cmat * ep.transpose();
  PhaseSpaceField field(grid, FieldKind::Intensity);
  for (int ip = 0; ip < grid; ++ip)
    for (int iq = 0; iq < grid; ++iq)
      field.at(iq, ip) = std::norm(f(iq, ip));
  return field;
}

}  // namespace rotorchan
