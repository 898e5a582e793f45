#include "ere/numerics.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>

namespace ere {

Mat2 phi_embed(cplx z) {
  Mat2 m;
  m << z.real(), -z.imag(), z.imag(), z.real();
  return m;
}

Mat2 psi_embed(cplx z) {
  Mat2 m;
  m << z.real(), z.imag(), z.imag(), -z.real();
  return m;
}

Mat2 rot2(double t) {
  Mat2 m;
  const double c = std::cos(t), s = std::sin(t);
  m << c, -s, s, c;
  return m;
}

Mat2 j2() {
  Mat2 m;
  m << 0, -1, 1, 0;
  return m;
}

Mat4 j4() {
  Mat4 m = Mat4::Zero();
  m(0, 2) = -1;
  m(1, 3) = -1;
  m(2, 0) = 1;
  m(3, 1) = 1;
  return m;
}

double frobenius(const Mat4& m) { return m.norm(); }

double symplectic_defect_abs(const Mat4& m) {
  const Mat4 j = j4();
  return (m.transpose() * j * m - j).norm();
}

double symplectic_defect(const Mat4& m) {
  const double n = m.norm();
  return symplectic_defect_abs(m) / std::max(1.0, n * n);
}

SymplecticMatrix SymplecticMatrix::from(const Mat4& m) {
  SymplecticMatrix s;
  s.m = m;
  s.defect_abs = symplectic_defect_abs(m);
  const double n = m.norm();
  s.defect = s.defect_abs / std::max(1.0, n * n);
  return s;
}

int Spectrum4::count_on_unit() const {
  return static_cast<int>(std::count(on_unit.begin(), on_unit.end(), true));
}

Eigen::Vector4d balance4(const Mat4& m) {
  Mat4 a = m;
  Eigen::Vector4d d = Eigen::Vector4d::Ones();
  constexpr double radix = 2.0;
  bool done = false;
  for (int sweep = 0; sweep < 100 && !done; ++sweep) {
    done = true;
    for (int i = 0; i < 4; ++i) {
      double c = 0.0, r = 0.0;
      for (int j = 0; j < 4; ++j) {
        if (j == i) continue;
        c += std::abs(a(j, i));
        r += std::abs(a(i, j));
      }
      if (c == 0.0 || r == 0.0) continue;
      const double s = c + r;
      double f = 1.0;
      double g = r / radix;
      while (c < g) {
        f *= radix;
        c *= radix * radix;
      }
      g = r * radix;
      while (c > g) {
        f /= radix;
        c /= radix * radix;
      }
      if ((c + r) / f < 0.95 * s) {
        done = false;
        d(i) *= f;
        a.row(i) /= f;
        a.col(i) *= f;
      }
    }
  }
  return d;
}

Spectrum4 eig4(const Mat4& m, const Eig4Options& opt) {
  if (!m.allFinite()) throw NumericalError("eig4: non-finite matrix entry");
  const Eigen::Vector4d d = balance4(m);
  const Mat4 b = d.cwiseInverse().asDiagonal() * m * d.asDiagonal();

  Eigen::EigenSolver<Mat4> es;
  es.setMaxIterations(400);
  es.compute(b, true);
  if (es.info() != Eigen::Success) throw NumericalError("eig4: QR iteration did not converge");

  const double nrm = m.norm();
  Spectrum4 s;
  s.unit_tol = std::max(opt.unit_tol, 8.0 * std::numeric_limits<double>::epsilon() * nrm);
  s.off_margin = std::numeric_limits<double>::infinity();
  const Mat4c mc = m.cast<cplx>();
  for (int j = 0; j < 4; ++j) {
    s.values[j] = es.eigenvalues()(j);
    Vec4c v = d.cast<cplx>().asDiagonal() * es.eigenvectors().col(j);
    v.normalize();
    s.vectors.col(j) = v;
    const double res = (mc * v - s.values[j] * v).norm();
    s.max_residual = std::max(s.max_residual, res);
    if (res > opt.residual_tol * std::max(1.0, nrm))
      throw NumericalError("eig4: eigenpair residual " + std::to_string(res) + " exceeds tolerance");
    const double dev = std::abs(std::abs(s.values[j]) - 1.0);
    s.on_unit[j] = dev <= s.unit_tol;
    if (!s.on_unit[j]) s.off_margin = std::min(s.off_margin, dev);
  }
  return s;
}

namespace {

cplx horner(const std::array<double, 5>& c, cplx x) {
  cplx p = c[4];
  for (int k = 3; k >= 0; --k) p = p * x + c[k];
  return p;
}

cplx horner_d(const std::array<double, 5>& c, cplx x) {
  cplx p = 4.0 * c[4];
  for (int k = 3; k >= 1; --k) p = p * x + static_cast<double>(k) * c[k];
  return p;
}

}  // namespace

std::array<cplx, 4> quartic_roots(double c0, double c1, double c2, double c3, double c4) {
  if (c4 == 0.0) throw std::invalid_argument("quartic_roots: leading coefficient is zero");
  std::array<cplx, 4> roots{};
  if (c1 == 0.0 && c3 == 0.0) {
    // c4 a^2 + c2 a + c0 with a = x^2
    const double disc = c2 * c2 - 4.0 * c4 * c0;
    cplx a1, a2;
    if (disc >= 0.0) {
      const double q = -0.5 * (c2 + std::copysign(std::sqrt(disc), c2));
      if (q == 0.0) {
        a1 = a2 = 0.0;
      } else {
        a1 = q / c4;
        a2 = c0 / q;
      }
    } else {
      const double im = std::sqrt(-disc) / (2.0 * c4);
      a1 = cplx(-c2 / (2.0 * c4), im);
      a2 = std::conj(a1);
    }
    const cplx r1 = std::sqrt(a1), r2 = std::sqrt(a2);
    roots = {r1, -r1, r2, -r2};
    return roots;
  }

  Mat4 comp = Mat4::Zero();
  comp(0, 0) = -c3 / c4;
  comp(0, 1) = -c2 / c4;
  comp(0, 2) = -c1 / c4;
  comp(0, 3) = -c0 / c4;
  comp(1, 0) = comp(2, 1) = comp(3, 2) = 1.0;
  const Eigen::Vector4d d = balance4(comp);
  const Mat4 b = d.cwiseInverse().asDiagonal() * comp * d.asDiagonal();
  Eigen::EigenSolver<Mat4> es(b, false);
  if (es.info() != Eigen::Success) throw NumericalError("quartic_roots: companion QR failed");
  const std::array<double, 5> c{c0, c1, c2, c3, c4};
  for (int j = 0; j < 4; ++j) {
    cplx x = es.eigenvalues()(j);
    const cplx dp = horner_d(c, x);
    if (std::abs(dp) > 0.0) {
      const cplx step = horner(c, x) / dp;
      if (std::abs(step) < 1e-6 * std::max(1.0, std::abs(x))) x -= step;
    }
    roots[j] = x;
  }
  return roots;
}

}  // namespace ere
