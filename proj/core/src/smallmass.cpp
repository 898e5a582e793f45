#include "ere/smallmass.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

#include <cmath>
#include <stdexcept>

namespace ere {

namespace {

const cplx kL4(0.5, 0.8660254037844386);

Eigen::Vector2d canonical_sign(Eigen::Vector2d u) {
  if (u(0) < -1e-15 || (std::abs(u(0)) <= 1e-15 && u(1) < 0.0)) u = -u;
  return u;
}

// Residual F_i = sum_j m_j (q_j - q_i)/|q_j - q_i|^3 + lambda (q_i - q_c) and its
// Jacobian with respect to (Re q3, Im q3, Re q4, Im q4, lambda).
struct GaugeSystem {
  std::array<double, 4> m;

  std::array<Eigen::Vector2d, 4> positions(const Eigen::Matrix<double, 5, 1>& x) const {
    return {Eigen::Vector2d(0.0, 0.0), Eigen::Vector2d(1.0, 0.0), Eigen::Vector2d(x(0), x(1)),
            Eigen::Vector2d(x(2), x(3))};
  }

  Eigen::Matrix<double, 8, 1> residual(const Eigen::Matrix<double, 5, 1>& x) const {
    const auto q = positions(x);
    Eigen::Vector2d qc = Eigen::Vector2d::Zero();
    for (int i = 0; i < 4; ++i) qc += m[i] * q[i];
    Eigen::Matrix<double, 8, 1> F;
    for (int i = 0; i < 4; ++i) {
      Eigen::Vector2d acc = x(4) * (q[i] - qc);
      for (int j = 0; j < 4; ++j) {
        if (j == i) continue;
        const Eigen::Vector2d d = q[j] - q[i];
        acc += m[j] * d / std::pow(d.norm(), 3);
      }
      F.segment<2>(2 * i) = acc;
    }
    return F;
  }

  Eigen::Matrix<double, 8, 5> jacobian(const Eigen::Matrix<double, 5, 1>& x) const {
    const auto q = positions(x);
    Eigen::Vector2d qc = Eigen::Vector2d::Zero();
    for (int i = 0; i < 4; ++i) qc += m[i] * q[i];
    // G(d) = d/|d|^3, dG/dd = I/r^3 - 3 d d^T / r^5
    auto dG = [](const Eigen::Vector2d& d) {
      const double r = d.norm();
      return Eigen::Matrix2d(Eigen::Matrix2d::Identity() / std::pow(r, 3) - 3.0 * d * d.transpose() / std::pow(r, 5));
    };
    Eigen::Matrix<double, 8, 5> Jm = Eigen::Matrix<double, 8, 5>::Zero();
    for (int i = 0; i < 4; ++i) {
      for (int k = 2; k < 4; ++k) {
        Eigen::Matrix2d blk = -x(4) * m[k] * Eigen::Matrix2d::Identity();
        if (k == i) {
          blk += x(4) * Eigen::Matrix2d::Identity();
          for (int j = 0; j < 4; ++j)
            if (j != i) blk -= m[j] * dG(q[j] - q[i]);
        } else {
          blk += m[k] * dG(q[k] - q[i]);
        }
        Jm.block<2, 2>(2 * i, 2 * (k - 2)) = blk;
      }
      Jm.block<2, 1>(2 * i, 4) = q[i] - qc;
    }
    return Jm;
  }
};

}  // namespace

std::string to_string(Branch b) { return b == Branch::convex ? "convex" : "nonconvex"; }

Branch branch_from_string(const std::string& s) {
  if (s == "convex") return Branch::convex;
  if (s == "nonconvex" || s == "non-convex") return Branch::nonconvex;
  throw std::invalid_argument("unknown branch '" + s + "'");
}

void SmallMassFamily::validate() const {
  if (!(m > 0.0 && m < 1.0)) throw std::invalid_argument("m must lie in (0, 1)");
  if (!(tau > 0.0 && tau <= 1.0)) throw std::invalid_argument("tau must lie in (0, 1]");
  if (!(eps > 0.0)) throw std::invalid_argument("eps must be positive");
  if (!((1.0 + tau) * eps < 1.0 - m)) throw std::invalid_argument("(1 + tau) eps must be below 1 - m");
}

std::array<double, 4> SmallMassFamily::masses() const {
  return {m, 1.0 - m - (1.0 + tau) * eps, eps, tau * eps};
}

Mat2 hessian_V2(double m) {
  const double a0 = 1.0 / std::sqrt(m * (1.0 - m));
  const double off = -3.0 * std::sqrt(3.0) * (1.0 - 2.0 * m) / 4.0;
  Mat2 h;
  h << 0.75, off, off, 2.25;
  return h / (a0 * a0 * a0);
}

HessianEigen hessian_eigen(double m) {
  Eigen::SelfAdjointEigenSolver<Mat2> es(hessian_V2(m));
  HessianEigen out;
  out.delta1 = es.eigenvalues()(1);
  out.delta2 = es.eigenvalues()(0);
  out.u1 = canonical_sign(es.eigenvectors().col(1));
  out.u2 = canonical_sign(es.eigenvectors().col(0));
  return out;
}

double line_angle(cplx w) {
  double a = std::arg(w);
  if (a > kPi / 2) a -= kPi;
  if (a <= -kPi / 2) a += kPi;
  return a;
}

bool branch_consistent(Branch b, double theta34, double slack) {
  const double t = std::abs(theta34);
  return b == Branch::nonconvex ? t >= kPi / 3 - slack : t <= kPi / 3 + slack;
}

LimitData limit_parameters(const SmallMassFamily& fam) {
  fam.validate();
  const double m = fam.m;
  LimitData d;
  d.alpha0 = 1.0 / std::sqrt(m * (1.0 - m));
  d.mu0 = std::pow(d.alpha0, -3);
  d.beta = 27.0 * m * (1.0 - m);
  const double s = std::sqrt(9.0 - d.beta);
  d.lambda1 = (3.0 + s) / 2.0;
  d.lambda2 = (3.0 - s) / 2.0;
  const cplx k = 0.75 * cplx(1.0, std::sqrt(3.0) * (1.0 - 2.0 * m));
  d.beta11_0 = k;
  d.beta12_0 = 0.0;
  const HessianEigen he = hessian_eigen(m);
  if (fam.branch == Branch::nonconvex) {
    d.lambda3 = (9.0 + 3.0 * s) / 2.0;
    d.lambda4 = -s;
    d.beta2_0 = d.lambda1;
    d.beta22_0 = -k * (9.0 + 5.0 * s) / (2.0 * s);
    d.theta34 = line_angle(cplx(he.u1(0), he.u1(1)));
  } else {
    d.lambda3 = (9.0 - 3.0 * s) / 2.0;
    d.lambda4 = s;
    d.beta2_0 = d.lambda2;
    d.beta22_0 = k * (9.0 - 5.0 * s) / (2.0 * s);
    d.theta34 = line_angle(cplx(he.u2(0), he.u2(1)));
  }
  d.hessian_eigs = {d.lambda1 * d.mu0, d.lambda2 * d.mu0, d.lambda3 * d.mu0, d.lambda4 * d.mu0};
  return d;
}

std::array<cplx, 2> asymptotic_positions(const SmallMassFamily& fam) {
  fam.validate();
  const HessianEigen he = hessian_eigen(fam.m);
  const bool nc = fam.branch == Branch::nonconvex;
  const double lam = (nc ? he.delta1 : he.delta2) * std::pow(1.0 / std::sqrt(fam.m * (1.0 - fam.m)), 3);
  const Eigen::Vector2d& v = nc ? he.u1 : he.u2;
  const cplx u(v(0), v(1));
  // separation ((1 + tau) eps / delta_i)^{1/3} in a-scale, divided by alpha0
  const double d = std::cbrt((1.0 + fam.tau) * fam.eps / lam);
  const double t = fam.tau;
  return {kL4 - t / (1.0 + t) * d * u, kL4 + d * u / (1.0 + t)};
}

CCSolution solve_cc_newton(const SmallMassFamily& fam, const NewtonOptions& opt,
                           const std::optional<std::array<double, 5>>& guess) {
  fam.validate();
  if (fam.eps > 1e-2) throw std::invalid_argument("eps above 1e-2 is outside the Newton basin guard");
  GaugeSystem g{fam.masses()};
  Eigen::Matrix<double, 5, 1> x;
  if (guess) {
    for (int i = 0; i < 5; ++i) x(i) = (*guess)[i];
  } else {
    const auto p = asymptotic_positions(fam);
    x << p[0].real(), p[0].imag(), p[1].real(), p[1].imag(), 1.0;
  }

  double res = g.residual(x).norm();
  int it = 0;
  for (; it < opt.max_iter && res > opt.tol; ++it) {
    const Eigen::Matrix<double, 5, 1> dx = g.jacobian(x).colPivHouseholderQr().solve(-g.residual(x));
    // backtrack if the full step increases the residual
    double step = 1.0;
    Eigen::Matrix<double, 5, 1> xn = x + dx;
    double rn = g.residual(xn).norm();
    while (!(rn < res) && step > 1e-4) {
      step *= 0.5;
      xn = x + step * dx;
      rn = g.residual(xn).norm();
    }
    if (!(rn < res)) break;
    x = xn;
    res = rn;
    if (dx.norm() < 1e-15 * (1.0 + x.norm())) break;
  }
  if (!std::isfinite(res) || res > 1e-10)
    throw NewtonError("Newton iteration did not converge (last residual " + std::to_string(res) + ")");

  CCSolution out;
  out.masses = g.m;
  out.q = {cplx(0.0, 0.0), cplx(1.0, 0.0), cplx(x(0), x(1)), cplx(x(2), x(3))};
  out.lambda = x(4);
  out.iterations = it;
  out.theta34 = line_angle(out.q[3] - out.q[2]);
  if (!branch_consistent(fam.branch, out.theta34))
    throw NewtonError("branch flip: theta34 = " + std::to_string(out.theta34) + " inconsistent with " +
                      to_string(fam.branch));
  out.sys = normalize(out.masses, out.q);
  out.residual = cc_residual(out.sys);
  if (out.residual > 1e-10)
    throw NewtonError("normalized CC residual " + std::to_string(out.residual) + " above 1e-10");
  return out;
}

LadderReport limit_ladder(double m, double tau, Branch branch, const std::vector<double>& eps_ladder,
                          const NewtonOptions& opt) {
  if (eps_ladder.empty()) throw std::invalid_argument("empty eps ladder");
  LadderReport rep;
  rep.family = SmallMassFamily{m, tau, eps_ladder.front(), branch};
  rep.limit = limit_parameters(rep.family);

  std::optional<std::array<double, 5>> seed;
  double prev_eps = 0.0;
  for (double eps : eps_ladder) {
    SmallMassFamily fam{m, tau, eps, branch};
    const CCSolution* prev = rep.rows.empty() ? nullptr : &rep.rows.back().cc;
    if (prev) {
      // keep the weighted midpoint of the pair, rescale the separation like eps^{1/3}
      const cplx mid = (prev->q[2] + tau * prev->q[3]) / (1.0 + tau);
      const double f = std::cbrt(eps / prev_eps);
      const cplx q3 = mid + f * (prev->q[2] - mid);
      const cplx q4 = mid + f * (prev->q[3] - mid);
      seed = std::array<double, 5>{q3.real(), q3.imag(), q4.real(), q4.imag(), prev->lambda};
    }
    LadderRow row;
    row.eps = eps;
    row.cc = solve_cc_newton(fam, opt, seed);
    const CCData cc = build_ccdata(row.cc.sys, 1e-8);
    row.params = essential_parameters(row.cc.sys, cc);
    row.unitarity = unitarity_defect(row.cc.sys, cc);
    row.err_beta2 = std::abs(row.params.beta2 - rep.limit.beta2_0);
    row.abs_beta12 = std::abs(row.params.beta12);
    row.err_beta11 = std::abs(row.params.beta11 - rep.limit.beta11_0);
    row.err_beta22 = std::abs(row.params.beta22 - rep.limit.beta22_0);
    rep.rows.push_back(row);
    prev_eps = eps;
  }
  rep.errors_monotone = true;
  for (std::size_t i = 1; i < rep.rows.size(); ++i) {
    const auto& a = rep.rows[i - 1];
    const auto& b = rep.rows[i];
    if (!(b.err_beta2 < a.err_beta2 && b.abs_beta12 < a.abs_beta12 && b.err_beta22 < a.err_beta22))
      rep.errors_monotone = false;
  }
  return rep;
}

}  // namespace ere
