#pragma once

#include <Eigen/Dense>

#include <array>
#include <complex>
#include <stdexcept>
#include <string>

namespace ere {

using cplx = std::complex<double>;
using Mat2 = Eigen::Matrix2d;
using Mat4 = Eigen::Matrix4d;
using Mat4c = Eigen::Matrix4cd;
using Vec4 = Eigen::Vector4d;
using Vec4c = Eigen::Vector4cd;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Phi(z) = [[Re z, -Im z], [Im z, Re z]], multiplication by z on R^2.
Mat2 phi_embed(cplx z);
// Psi(z) = [[Re z, Im z], [Im z, -Re z]], a reflection scaled by |z|.
Mat2 psi_embed(cplx z);

Mat2 rot2(double t);
Mat2 j2();
// Standard symplectic matrix on (p, x): [[0, -I], [I, 0]].
Mat4 j4();

double symplectic_defect_abs(const Mat4& m);
// ||M^T J M - J||_F / max(1, ||M||_F^2). The absolute defect grows with ||M||^2
// in floating point, so the relative form is the one compared against tolerances.
double symplectic_defect(const Mat4& m);

struct SymplecticMatrix {
  Mat4 m;
  double defect = 0.0;
  double defect_abs = 0.0;

  static SymplecticMatrix from(const Mat4& m);
};

struct Spectrum4 {
  std::array<cplx, 4> values{};
  Mat4c vectors;  // column j belongs to values[j], unit 2-norm
  std::array<bool, 4> on_unit{};
  double unit_tol = 1e-7;
  // Smallest ||lambda| - 1| over eigenvalues flagged off the circle (inf if none).
  double off_margin = 0.0;
  double max_residual = 0.0;

  int count_on_unit() const;
};

struct Eig4Options {
  double unit_tol = 1e-7;
  double residual_tol = 1e-10;
};

// Eigen-decomposition of a real 4x4 matrix with diagonal balancing.
// The unit-circle tolerance actually used is max(unit_tol, 8 eps ||M||_F), because
// eigenvalue errors scale with the matrix norm when the monodromy is large.
Spectrum4 eig4(const Mat4& m, const Eig4Options& opt = {});

// Roots of c4 x^4 + c3 x^3 + c2 x^2 + c1 x + c0.
std::array<cplx, 4> quartic_roots(double c0, double c1, double c2, double c3, double c4);

// Diagonal similarity D such that D^{-1} M D has balanced row/column norms.
Eigen::Vector4d balance4(const Mat4& m);

double frobenius(const Mat4& m);

}  // namespace ere
