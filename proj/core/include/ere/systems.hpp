#pragma once

#include "ere/numerics.hpp"

#include <array>
#include <cstddef>
#include <string>
#include <vector>

namespace ere {

enum class Case { nonconvex, convex, lagrange, custom };

std::string to_string(Case c);
Case case_from_string(const std::string& s);

// 2-dof linearized system z' = J B(t) z with
//   B(t) = [[1,0,0,1],[0,1,-1,0],[0,-1,1-l3 f,0],[1,0,0,1-l4 f]],  f = 1/(1+e cos t).
//
// `param` is the curve coordinate used by the analysis: the substitute
// bt = sqrt(9 - beta) for the non-convex family (which may be extended below
// its physical range [1.5, 3]), and beta itself for the convex and Lagrangian
// families.
struct EssentialSystem {
  double lambda3 = 0.0;
  double lambda4 = 0.0;
  double e = 0.0;
  Case tag = Case::custom;
  double param = 0.0;

  // l3 = (9 + 3 bt)/2, l4 = -bt. Accepts bt >= -9/5.
  static EssentialSystem nonconvex_tilde(double bt, double e);
  // Physical mass parameter beta in [0, 27/4]; bt = sqrt(9 - beta).
  static EssentialSystem nonconvex(double beta, double e);
  // l3 = (9 - 3s)/2, l4 = s with s = sqrt(9 - beta), beta in [0, 27/4].
  static EssentialSystem convex(double beta, double e);
  // l3,4 = (3 +- s)/2.
  static EssentialSystem lagrange(double beta, double e);
  static EssentialSystem custom(double l3, double l4, double e);

  // Family member at curve coordinate p for tagged cases (custom: unchanged).
  EssentialSystem with_param(double p) const;
  EssentialSystem with_e(double e_new) const;
};

// Physical beta from the non-convex substitute (bt >= 0).
inline double beta_from_tilde(double bt) { return 9.0 - bt * bt; }

Mat4 build_B(const EssentialSystem& sys, double t);
Mat4 build_JB(const EssentialSystem& sys, double t);

// Coefficients (c0..c4) of det(x I - J B) at e = 0: x^4 + (4 - l3 - l4) x^2 + l3 l4.
std::array<double, 5> circular_char_poly(double l3, double l4);

struct MonodromyOptions {
  double tol = 1e-12;
  double e_cap = 0.99;
};

struct Monodromy {
  SymplecticMatrix gamma2pi;
  std::size_t steps = 0;
  double defect = 0.0;
  double tol_used = 0.0;
};

Monodromy integrate_monodromy(const EssentialSystem& sys, const MonodromyOptions& opt = {});

struct PathSample {
  double t = 0.0;
  Mat4 gamma;  // fundamental solution
  Mat4 xi;     // R4(t) gamma(t), R4 = diag(R(t), R(t))
};

// Fundamental solution and its rotated version sampled at n+1 equispaced times in [0, 2pi].
std::vector<PathSample> rotated_path(const EssentialSystem& sys, std::size_t n,
                                     const MonodromyOptions& opt = {});

// Generator of the rotated system: xi' = J diag(I, R (I - K) R^T) xi, K = f diag(l3, l4).
Mat4 rotated_generator(const EssentialSystem& sys, double t);

}  // namespace ere
