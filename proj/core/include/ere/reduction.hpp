#pragma once

#include "ere/numerics.hpp"

#include <array>

namespace ere {

struct BodySystem {
  std::array<double, 4> m{};
  std::array<cplx, 4> z{};

  double total_mass() const;
  cplx center() const;
  double inertia() const;  // sum m |z|^2
};

struct CCData {
  double mu = 0.0;
  Mat4 D;          // mu I + Mt^{-1} B
  Mat4 B;          // B_ij = m_i m_j / r_ij^3, diagonal = minus row sums
  Vec4c v1, v2, v3, v4;
  double k = 1.0;
  cplx l = 0.0;
  Vec4 c;          // real entries of v4
  double rho = 0.0;
  double trace_D = 0.0;  // from the pair sums
};

struct EssentialParameters {
  double beta1 = 0.0;
  double beta2 = 0.0;
  cplx beta11 = 0.0;
  cplx beta12 = 0.0;
  cplx beta22 = 0.0;
};

struct ConfigurationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Translate and scale so that sum m = 1, sum m z = 0, sum m |z|^2 = 1. No rotation.
BodySystem normalize(const std::array<double, 4>& masses, const std::array<cplx, 4>& positions);

// Potential-weighted energy sum_{i<j} m_i m_j / |z_i - z_j|.
double mu_of(const BodySystem& sys);

// max_i | sum_{j != i} m_j (z_j - z_i)/|z_i - z_j|^3 + mu z_i |  on a normalized system.
double cc_residual(const BodySystem& sys);

// Signed-area determinant (i/4) det[[1, z_i, conj z_i], [1, z_j, conj z_j], [1, z_k, conj z_k]].
double triangle_delta(cplx zi, cplx zj, cplx zk);

CCData build_ccdata(const BodySystem& sys, double cc_tol = 1e-8);

// Unitarity defect max |conj(V)^T Mt V - I| of the basis.
double unitarity_defect(const BodySystem& sys, const CCData& cc);

EssentialParameters essential_parameters(const BodySystem& sys, const CCData& cc);

struct LinearizedBlocks {
  Eigen::Matrix<double, 12, 12> B;  // variables (Z, W1, W2, z, w1, w2)
  Mat4 z_block;                     // 4x4 on (Z, z)
  Mat4 w1_block;                    // on (W1, w1)
  Mat4 w2_block;                    // on (W2, w2)
  Eigen::Matrix2d coupling;         // H_{w1 w2}
};

// Hessian blocks of the linearized Hamiltonian at true anomaly theta.
LinearizedBlocks assemble_linearized(const EssentialParameters& p, double e, double theta);

}  // namespace ere
