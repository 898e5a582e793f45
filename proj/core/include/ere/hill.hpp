#pragma once

#include "ere/numerics.hpp"

#include <Eigen/Dense>

#include <functional>
#include <vector>

namespace ere {

// Galerkin matrix of  A = -d^2/dt^2 - I + R(t) K(t) R(t)^T,  K = f diag(l3, l4),
// on the omega-twisted basis e^{i (k + phi/2pi) t} (x) C^2 with omega = e^{i phi}.
// Modes k in [-N, N]; for omega = -1 the mode k = -N-1 is added so that the
// frequency set is symmetric and the matrix admits a real form.
struct HillOperator {
  double lambda3 = 0.0, lambda4 = 0.0, e = 0.0;
  cplx omega = 1.0;
  double phase = 0.0;  // phi in [0, 2pi)
  int N = 0;
  std::vector<int> modes;
  Eigen::MatrixXcd H;
  double hermiticity_defect = 0.0;
  double potential_scale = 1.0;  // max |l| / (1 - e)

  double frequency(std::size_t i) const;  // of mode index i
  bool real_form() const;                 // omega = +-1
};

HillOperator hill_matrix(double l3, double l4, double e, cplx omega, int N);

// Ascending eigenvalues; uses the real symmetric form when omega = +-1.
Eigen::VectorXd hill_eigenvalues(const HillOperator& h);

struct OmegaIndex {
  cplx omega = 1.0;
  int i_omega = 0;
  int nu_omega = 0;       // eigenvalues with |mu| <= eps_ker
  int truncation_N = 0;
  bool stabilized = false;  // same (i, nu) at N and 2N
  int i_at_2N = -1;
  int nu_at_2N = -1;
  double eps_ker = 0.0;
  double min_abs_eig = 0.0;  // margin of the count
  double smallest_eig = 0.0;
};

struct MorseOptions {
  int N = 64;
  bool check_doubling = true;
  double eps_ker = 1e-9;  // relative to HillOperator::potential_scale
};

OmegaIndex morse_index(const HillOperator& h, const MorseOptions& opt = {});
OmegaIndex morse_index(double l3, double l4, double e, cplx omega, const MorseOptions& opt = {});

// Real recurrence matrix of the t -> -t parity class of the kernel equation in the
// co-moving frame,
//   (1 + e cos t)(x'' - 2y') = l3 x,   (1 + e cos t)(y'' + 2x') = l4 y,
// on frequencies n + s/2 (n = 0..N), s = 0 for omega = 1 and s = 1 for omega = -1.
// parity 0: x cosine series, y sine series; parity 1: x sine, y cosine.
Eigen::MatrixXd parity_matrix(double l3, double l4, double e, int omega_sign, int parity, int N);
// Sign of det(parity_matrix); a sign change in the parameter brackets a root.
int parity_det_sign(double l3, double l4, double e, int omega_sign, int parity, int N);

struct KernelSolution {
  int N = 0;
  // co-moving frame coefficients on frequencies 0..N
  Eigen::VectorXd a, d;  // x = sum a_n cos nt, y = sum d_n sin nt
  Eigen::VectorXd b, c;  // second solution: x = sum b_n sin nt, y = sum c_n cos nt
  double recurrence_residual_ad = 0.0;
  double recurrence_residual_bc = 0.0;
  double hill_residual_1 = 0.0;  // ||A X|| / (scale ||X||) in the rotating frame
  double hill_residual_2 = 0.0;
  double gram_det = 0.0;         // of the two normalized solutions
  Eigen::VectorXcd X1, X2;       // rotating-frame Fourier coefficients, modes -(N+1)..N+1
};

// Kernel element of the omega = 1 operator from the (a, d) recurrences and the
// second solution b_n = a_n, c_n = -d_n (n >= 1), c_0 = e (a_1 + d_1/2) / l4.
// Requires l4 < 0 (the non-convex substitute bt = -l4 > 0).
KernelSolution kernel_fourier_solution(double l3, double l4, double e, int N = 64);

// A plane curve x(t) on [0, 2pi] with its derivative, in the rotating frame.
struct PlaneCurve {
  std::function<Eigen::Vector2d(double)> x;
  std::function<Eigen::Vector2d(double)> dx;
};

// X = R(t) u for a curve given in the co-moving frame.
PlaneCurve from_comoving(std::function<Eigen::Vector2d(double)> u, std::function<Eigen::Vector2d(double)> du);

// <A x, x> = int_0^{2pi} |x'|^2 - |x|^2 + x^T R K R^T x dt, adaptive Gauss-Kronrod.
double quadratic_form(double l3, double l4, double e, const PlaneCurve& c, double tol = 1e-12);
// int_0^{2pi} w(t) x^T R diag(k3, k4) R^T x dt
double potential_form(double k3, double k4, const std::function<double(double)>& w, const PlaneCurve& c,
                      double tol = 1e-12);
// int_0^{2pi} |x'|^2 - |x|^2 dt
double kinetic_form(const PlaneCurve& c, double tol = 1e-12);

}  // namespace ere
