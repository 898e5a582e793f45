#pragma once

#include "ere/numerics.hpp"

#include <string>
#include <vector>

namespace ere {

struct NullityInfo {
  int nu = 0;
  Eigen::Vector4d singular_values;  // of the balanced M - omega I, descending
  double threshold = 0.0;
};

// dim ker(M - omega I): singular values of the balanced M - omega I below
// max(rel_tol * max(1, sigma_2), 100 eps sigma_1).
NullityInfo nu_omega_info(const Mat4& m, cplx omega, double rel_tol = 1e-7);
int nu_omega(const Mat4& m, cplx omega, double rel_tol = 1e-7);

// (-1)^{n-1} conj(omega)^n det(M - omega I) with n = 2. Real whenever M is symplectic.
cplx d_omega_complex(const Mat4& m, cplx omega);
double d_omega(const Mat4& m, cplx omega);

// Sign of v^* (-i J) v for an eigenvector of a simple, non-real eigenvalue on the circle.
// Throws std::invalid_argument when lambda is off the circle or real, and
// NumericalError when the eigenvalue is repeated (the caller flags N2-suspect).
int krein_signature(const Mat4& m, cplx lambda, double unit_tol = 1e-7);
int krein_sign_of_vector(const Vec4c& v);

enum class Verdict { strongly_stable, unstable, hyperbolic, boundary };
std::string to_string(Verdict v);

struct NormalFormBlock {
  enum class Kind { D, R, I2, minus_I2, N1, N2, quad, I4 };
  Kind kind = Kind::D;
  double value = 0.0;  // D: real eigenvalue of modulus > 1; R: angle in (0, 2pi); N1/N2: +-1
  int b = 0;           // N1 sign
  std::string symbol() const;  // symbolic form, e.g. "R(θ)", "N1(-1,1)", "D(2)"
  std::string detail() const;  // with numbers
};

struct NormalForm {
  std::vector<NormalFormBlock> blocks;
  std::string tag;     // symbolic blocks joined with "⋄"
  std::string detail;  // numeric blocks
  Verdict verdict = Verdict::boundary;
  bool n2_suspect = false;
  int nu_plus1 = 0;
  int nu_minus1 = 0;
  Spectrum4 spectrum;
  // Distance of the nearest off-circle eigenvalue to the circle; inf if all on it.
  double unit_margin = 0.0;

  std::vector<double> angles() const;  // R-block angles
};

struct ClassifyOptions {
  double unit_tol = 1e-7;
  double nu_rel_tol = 1e-7;
};

// Block decomposition of a 4x4 symplectic matrix from its spectrum, the nullities at +-1
// and Krein signs. Ambiguous cases (colliding indefinite pairs, defective clusters,
// eigenvalues within 10 unit_tol of the circle without being on it) yield N2-suspect
// with a boundary verdict; no tag is guessed.
NormalForm classify_normal_form(const Mat4& m, const ClassifyOptions& opt = {});

// Splitting numbers (S+, S-) of the decomposition at a unit-circle point omega.
std::pair<int, int> splitting_numbers(const NormalForm& nf, cplx omega, double tol = 1e-6);

// i_omega for each omega from i_1 and the splitting numbers of the normal form.
// Throws std::domain_error for N2-suspect decompositions.
std::vector<int> index_via_splitting(const NormalForm& nf, int i1, const std::vector<cplx>& omegas);
int index_via_splitting(const NormalForm& nf, int i1, cplx omega);

}  // namespace ere
