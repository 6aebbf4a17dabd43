#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

namespace rotorchan {

using cxd = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;
// Classical channels are real and column-sparse: at most one momentum row
// block per column, so storage is compressed-column.
using SparseRealMatrix = Eigen::SparseMatrix<double>;

inline constexpr double kPi = 3.14159265358979323846264338327950288;
inline constexpr double kTwoPi = 2.0 * kPi;

// Kick strengths of the two rotors plus the coupling strength.
struct MapParams {
  double alpha1 = 2.0;
  double alpha2 = 2.0;
  double b = 0.1;
};

// Which single-particle reduction a classical channel describes.
enum class Axis { R1, R2 };

inline const char* axis_name(Axis a) { return a == Axis::R1 ? "R1" : "R2"; }

// Reduce to the fundamental torus cell [0,1).
inline double mod1(double x) {
  double y = x - std::floor(x);
  return y < 1.0 ? y : 0.0;  // guard rounding that lands exactly on 1
}

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SolverError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace rotorchan
