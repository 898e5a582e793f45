#include "ere/reduction.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace ere {

double BodySystem::total_mass() const { return m[0] + m[1] + m[2] + m[3]; }

cplx BodySystem::center() const {
  cplx c = 0.0;
  for (int i = 0; i < 4; ++i) c += m[i] * z[i];
  return c;
}

double BodySystem::inertia() const {
  double s = 0.0;
  for (int i = 0; i < 4; ++i) s += m[i] * std::norm(z[i]);
  return s;
}

BodySystem normalize(const std::array<double, 4>& masses, const std::array<cplx, 4>& positions) {
  double total = 0.0;
  for (double mi : masses) {
    if (!(mi > 0.0)) throw ConfigurationError("masses must be positive");
    total += mi;
  }
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (std::abs(positions[i] - positions[j]) == 0.0) throw ConfigurationError("coincident positions");
  BodySystem s;
  for (int i = 0; i < 4; ++i) s.m[i] = masses[i] / total;
  cplx c = 0.0;
  for (int i = 0; i < 4; ++i) c += s.m[i] * positions[i];
  for (int i = 0; i < 4; ++i) s.z[i] = positions[i] - c;
  const double scale = std::sqrt(s.inertia());
  for (auto& zi : s.z) zi /= scale;
  return s;
}

double mu_of(const BodySystem& s) {
  double mu = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) mu += s.m[i] * s.m[j] / std::abs(s.z[i] - s.z[j]);
  return mu;
}

double cc_residual(const BodySystem& s) {
  const double mu = mu_of(s);
  double worst = 0.0;
  for (int i = 0; i < 4; ++i) {
    cplx acc = mu * s.z[i];
    for (int j = 0; j < 4; ++j) {
      if (j == i) continue;
      const cplx d = s.z[j] - s.z[i];
      const double r = std::abs(d);
      acc += s.m[j] * d / (r * r * r);
    }
    worst = std::max(worst, std::abs(acc));
  }
  return worst;
}

double triangle_delta(cplx zi, cplx zj, cplx zk) {
  // det[[1, a, conj a], [1, b, conj b], [1, c, conj c]]
  auto term = [](cplx a, cplx b) { return a * std::conj(b) - std::conj(a) * b; };
  const cplx det = term(zj, zk) - term(zi, zk) + term(zi, zj);
  return (cplx(0.0, 0.25) * det).real();
}

CCData build_ccdata(const BodySystem& s, double cc_tol) {
  const double res = cc_residual(s);
  if (res > cc_tol) throw ConfigurationError("not a central configuration (residual " + std::to_string(res) + ")");
  CCData cc;
  cc.mu = mu_of(s);
  cc.B = Mat4::Zero();
  cc.trace_D = 4.0 * cc.mu;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      if (i == j) continue;
      const double r = std::abs(s.z[i] - s.z[j]);
      cc.B(i, j) = s.m[i] * s.m[j] / (r * r * r);
      cc.B(i, i) -= cc.B(i, j);
      if (j > i) cc.trace_D -= (s.m[i] + s.m[j]) / (r * r * r);
    }
  }
  cc.D = cc.mu * Mat4::Identity();
  for (int i = 0; i < 4; ++i) cc.D.row(i) += cc.B.row(i) / s.m[i];

  cplx S = 0.0;
  for (int i = 0; i < 4; ++i) S += s.m[i] * std::conj(s.z[i]) * std::conj(s.z[i]);
  if (std::abs(S) >= 1.0 - 1e-12)
    throw ConfigurationError("collinear configuration: v2 and conj(v2) are dependent");
  cc.k = 1.0 / std::sqrt(1.0 - std::norm(S));
  cc.l = -S * cc.k;
  for (int i = 0; i < 4; ++i) {
    cc.v1(i) = 1.0;
    cc.v2(i) = s.z[i];
    cc.v3(i) = cc.k * std::conj(s.z[i]) + cc.l * s.z[i];
  }
  cc.rho = std::sqrt(s.m[0] * s.m[1] * s.m[2] * s.m[3]);
  const auto& z = s.z;
  const double f = 4.0 * cc.k * cc.rho;
  cc.c(0) = f * triangle_delta(z[1], z[2], z[3]) / s.m[0];
  cc.c(1) = -f * triangle_delta(z[0], z[2], z[3]) / s.m[1];
  cc.c(2) = f * triangle_delta(z[0], z[1], z[3]) / s.m[2];
  cc.c(3) = -f * triangle_delta(z[0], z[1], z[2]) / s.m[3];
  cc.v4 = cc.c.cast<cplx>();
  return cc;
}

double unitarity_defect(const BodySystem& s, const CCData& cc) {
  Mat4c V;
  V.col(0) = cc.v1;
  V.col(1) = cc.v2;
  V.col(2) = cc.v3;
  V.col(3) = cc.v4;
  Eigen::Vector4cd m;
  for (int i = 0; i < 4; ++i) m(i) = s.m[i];
  const Mat4c G = V.adjoint() * m.asDiagonal() * V;
  return (G - Mat4c::Identity()).cwiseAbs().maxCoeff();
}

EssentialParameters essential_parameters(const BodySystem& s, const CCData& cc) {
  EssentialParameters p;
  p.beta1 = 0.0;
  p.beta2 = 1.0 - cc.trace_D / cc.mu;
  cplx s11 = 0.0, s12 = 0.0, s22 = 0.0;
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      const cplx dz = s.z[i] - s.z[j];
      const double r = std::abs(dz);
      const cplx w = s.m[i] * s.m[j] * dz * dz / std::pow(r, 5);
      const cplx db = std::conj(cc.v3(i) - cc.v3(j));
      const double dc = cc.c(i) - cc.c(j);
      s11 += w * db * db;
      s12 += w * db * dc;
      s22 += w * dc * dc;
    }
  }
  const double f = 1.5 / cc.mu;
  p.beta11 = f * s11;
  p.beta12 = f * s12;
  p.beta22 = f * s22;
  return p;
}

LinearizedBlocks assemble_linearized(const EssentialParameters& p, double e, double theta) {
  if (!(e >= 0.0 && e < 1.0)) throw std::invalid_argument("eccentricity must lie in [0, 1)");
  const double rp = 1.0 / (1.0 + e * std::cos(theta));
  const Mat2 I = Mat2::Identity();
  const Mat2 J = j2();

  Mat2 hzz = Mat2::Zero();
  hzz(0, 0) = -(2.0 - e * std::cos(theta)) * rp;
  hzz(1, 1) = 1.0;
  const Mat2 hw1 = I - rp * ((3.0 + p.beta1) / 2.0 * I + psi_embed(p.beta11));
  const Mat2 hw2 = I - rp * ((3.0 + p.beta2) / 2.0 * I + psi_embed(p.beta22));
  const Mat2 h12 = -rp * psi_embed(p.beta12);

  LinearizedBlocks out;
  out.B.setZero();
  for (int k = 0; k < 3; ++k) {
    out.B.block<2, 2>(2 * k, 2 * k) = I;
    out.B.block<2, 2>(2 * k, 6 + 2 * k) = -J;
    out.B.block<2, 2>(6 + 2 * k, 2 * k) = J;
  }
  out.B.block<2, 2>(6, 6) = hzz;
  out.B.block<2, 2>(8, 8) = hw1;
  out.B.block<2, 2>(10, 10) = hw2;
  out.B.block<2, 2>(8, 10) = h12;
  out.B.block<2, 2>(10, 8) = h12;
  out.coupling = h12;

  auto sub = [&](const Mat2& h) {
    Mat4 m;
    m << I, -J, J, h;
    return m;
  };
  out.z_block = sub(hzz);
  out.w1_block = sub(hw1);
  out.w2_block = sub(hw2);
  return out;
}

}  // namespace ere
