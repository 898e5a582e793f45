#pragma once

#include "ere/numerics.hpp"
#include "ere/reduction.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace ere {

enum class Branch { nonconvex, convex };
std::string to_string(Branch b);
Branch branch_from_string(const std::string& s);

// Primaries m and 1 - m - (1 + tau) eps, small bodies eps and tau eps near L4.
struct SmallMassFamily {
  double m = 0.5;
  double tau = 1.0;
  double eps = 1e-4;
  Branch branch = Branch::convex;

  void validate() const;  // throws std::invalid_argument
  std::array<double, 4> masses() const;
};

struct LimitData {
  double alpha0 = 0.0;  // [m(1-m)]^{-1/2}
  double mu0 = 0.0;     // alpha0^{-3}
  double beta = 0.0;    // 27 m (1 - m)
  double lambda1 = 0.0, lambda2 = 0.0;  // (3 +- sqrt(9 - beta)) / 2
  double lambda3 = 0.0, lambda4 = 0.0;  // essential pair of the branch
  double beta2_0 = 0.0;                 // lambda1 (non-convex) or lambda2 (convex)
  cplx beta11_0 = 0.0;
  cplx beta12_0 = 0.0;
  cplx beta22_0 = 0.0;
  double theta34 = 0.0;                 // limiting direction of q4 - q3, in (-pi/2, pi/2]
  std::array<double, 4> hessian_eigs{};  // mu0 * {lambda1, lambda2, lambda3, lambda4}
};

LimitData limit_parameters(const SmallMassFamily& fam);

// D^2 V_2 at the limiting L4 point, in the scale |a1 - a2| = alpha0.
Mat2 hessian_V2(double m);

struct HessianEigen {
  double delta1 = 0.0, delta2 = 0.0;  // delta1 >= delta2
  Eigen::Vector2d u1, u2;             // unit eigenvectors, x >= 0 (y > 0 if x = 0)
};
HessianEigen hessian_eigen(double m);

// Leading-order positions of bodies 3, 4 in the frame q1 = 0, q2 = 1.
std::array<cplx, 2> asymptotic_positions(const SmallMassFamily& fam);

// Direction angle of w folded into (-pi/2, pi/2].
double line_angle(cplx w);
// |theta34| >= pi/3 for the non-convex branch, <= pi/3 for the convex one.
bool branch_consistent(Branch b, double theta34, double slack = 1e-9);

struct NewtonOptions {
  int max_iter = 60;
  double tol = 1e-13;  // on the gauge-frame residual
};

struct CCSolution {
  std::array<double, 4> masses{};
  std::array<cplx, 4> q{};  // gauge frame q1 = 0, q2 = 1
  double lambda = 0.0;      // multiplier in the gauge frame
  BodySystem sys;           // normalized
  double residual = 0.0;    // cc_residual(sys)
  int iterations = 0;
  double theta34 = 0.0;
};

struct NewtonError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Gauss-Newton on the 8 real CC equations with unknowns q3, q4 and the multiplier.
// `guess` overrides the asymptotic initial positions (q3, q4, lambda).
CCSolution solve_cc_newton(const SmallMassFamily& fam, const NewtonOptions& opt = {},
                           const std::optional<std::array<double, 5>>& guess = std::nullopt);

struct LadderRow {
  double eps = 0.0;
  CCSolution cc;
  EssentialParameters params;
  double unitarity = 0.0;
  double err_beta2 = 0.0;
  double abs_beta12 = 0.0;
  double err_beta11 = 0.0;
  double err_beta22 = 0.0;
};

struct LadderReport {
  SmallMassFamily family;  // eps of the first rung
  LimitData limit;
  std::vector<LadderRow> rows;
  bool errors_monotone = false;  // err_beta2, |beta12|, err_beta22 strictly decrease
};

// Solves along a decreasing eps ladder, seeding each rung with the rescaled previous solution.
LadderReport limit_ladder(double m, double tau, Branch branch, const std::vector<double>& eps_ladder,
                          const NewtonOptions& opt = {});

}  // namespace ere
