#include "ere/hill.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <Eigen/SVD>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ere {

namespace {

bool is_minus_one(cplx w) { return std::abs(w + 1.0) < 1e-14; }
bool is_plus_one(cplx w) { return std::abs(w - 1.0) < 1e-14; }

double phase_of(cplx w) {
  if (is_plus_one(w)) return 0.0;
  if (is_minus_one(w)) return kPi;
  double p = std::arg(w);
  if (p < 0) p += kTwoPi;
  return p;
}

// Fourier coefficients of f(t) = 1/(1 + e cos t) for |m| <= mmax from an M-point DFT.
std::vector<double> f_hat(double e, int mmax, int M) {
  std::vector<double> fv(M);
  for (int j = 0; j < M; ++j) fv[j] = 1.0 / (1.0 + e * std::cos(kTwoPi * j / M));
  std::vector<double> out(mmax + 1);
  for (int m = 0; m <= mmax; ++m) {
    double s = 0.0;
    for (int j = 0; j < M; ++j) s += fv[j] * std::cos(kTwoPi * static_cast<double>((static_cast<long>(m) * j) % M) / M);
    out[m] = s / M;
  }
  return out;
}

}  // namespace

double HillOperator::frequency(std::size_t i) const { return modes[i] + phase / kTwoPi; }

bool HillOperator::real_form() const { return is_plus_one(omega) || is_minus_one(omega); }

HillOperator hill_matrix(double l3, double l4, double e, cplx omega, int N) {
  if (N < 8) throw std::invalid_argument("hill_matrix: N must be at least 8");
  if (!(e >= 0.0 && e < 1.0)) throw std::invalid_argument("hill_matrix: e must lie in [0, 1)");
  HillOperator h;
  h.lambda3 = l3;
  h.lambda4 = l4;
  h.e = e;
  h.omega = omega;
  h.phase = phase_of(omega);
  h.N = N;
  const int kmin = is_minus_one(omega) ? -N - 1 : -N;
  for (int k = kmin; k <= N; ++k) h.modes.push_back(k);
  const int nm = static_cast<int>(h.modes.size());
  const int span = N - kmin;
  const int M = 8 * N;
  const std::vector<double> fh = f_hat(e, span + 2, M);
  auto F = [&](int m) { return fh[std::abs(m)]; };

  const double c = 0.5 * (l3 + l4), d = 0.5 * (l3 - l4);
  // coefficient of e^{imt} in f(t) [[c + d cos2t, d sin2t], [d sin2t, c - d cos2t]]
  auto P = [&](int m) {
    const double fc = F(m);
    const double cos2 = 0.5 * (F(m - 2) + F(m + 2));
    const cplx sin2 = cplx(0.0, -0.5) * (F(m - 2) - F(m + 2));
    Eigen::Matrix2cd p;
    p(0, 0) = c * fc + d * cos2;
    p(1, 1) = c * fc - d * cos2;
    p(0, 1) = p(1, 0) = d * sin2;
    return p;
  };

  h.H.resize(2 * nm, 2 * nm);
  for (int i = 0; i < nm; ++i) {
    for (int j = 0; j < nm; ++j) {
      Eigen::Matrix2cd blk = P(h.modes[i] - h.modes[j]);
      if (i == j) {
        const double nu = h.frequency(i);
        blk += (nu * nu - 1.0) * Eigen::Matrix2cd::Identity();
      }
      h.H.block<2, 2>(2 * i, 2 * j) = blk;
    }
  }
  h.hermiticity_defect = (h.H - h.H.adjoint()).cwiseAbs().maxCoeff();
  h.potential_scale = std::max({1.0, std::abs(l3), std::abs(l4)}) / (1.0 - e);
  return h;
}

Eigen::VectorXd hill_eigenvalues(const HillOperator& h) {
  if (!h.real_form()) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h.H, Eigen::EigenvaluesOnly);
    return es.eigenvalues();
  }
  // Real basis: cos/sin combinations of the frequency pair +-nu.
  const int s = is_minus_one(h.omega) ? 1 : 0;
  const int kmin = h.modes.front();
  struct Entry {
    int row;
    cplx w;
  };
  std::vector<std::array<Entry, 2>> cols;
  std::vector<int> ncols;
  const double r = 1.0 / std::sqrt(2.0);
  for (int k : h.modes) {
    const int ks = -k - s;
    if (k + 0.5 * s < 0) continue;  // handled with its positive partner
    for (int comp = 0; comp < 2; ++comp) {
      const int ra = 2 * (k - kmin) + comp;
      if (ks == k) {
        cols.push_back({Entry{ra, 1.0}, Entry{ra, 0.0}});
        ncols.push_back(1);
      } else {
        const int rb = 2 * (ks - kmin) + comp;
        cols.push_back({Entry{ra, r}, Entry{rb, r}});
        ncols.push_back(2);
        cols.push_back({Entry{ra, cplx(0, -r)}, Entry{rb, cplx(0, r)}});
        ncols.push_back(2);
      }
    }
  }
  const int n = static_cast<int>(cols.size());
  Eigen::MatrixXd R(n, n);
  for (int p = 0; p < n; ++p) {
    for (int q = p; q < n; ++q) {
      cplx acc = 0.0;
      for (int a = 0; a < ncols[p]; ++a)
        for (int b = 0; b < ncols[q]; ++b)
          acc += std::conj(cols[p][a].w) * h.H(cols[p][a].row, cols[q][b].row) * cols[q][b].w;
      R(p, q) = R(q, p) = acc.real();
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(R, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

namespace {

void count(const HillOperator& h, double eps_rel, int& neg, int& ker, double& min_abs, double& smallest) {
  const Eigen::VectorXd ev = hill_eigenvalues(h);
  const double eps = eps_rel * h.potential_scale;
  neg = ker = 0;
  min_abs = std::numeric_limits<double>::infinity();
  for (int i = 0; i < ev.size(); ++i) {
    if (ev(i) < -eps) ++neg;
    else if (std::abs(ev(i)) <= eps) ++ker;
    min_abs = std::min(min_abs, std::abs(ev(i)));
  }
  smallest = ev.size() ? ev(0) : 0.0;
}

}  // namespace

OmegaIndex morse_index(const HillOperator& h, const MorseOptions& opt) {
  OmegaIndex r;
  r.omega = h.omega;
  r.truncation_N = h.N;
  r.eps_ker = opt.eps_ker * h.potential_scale;
  count(h, opt.eps_ker, r.i_omega, r.nu_omega, r.min_abs_eig, r.smallest_eig);
  if (opt.check_doubling) {
    const HillOperator h2 = hill_matrix(h.lambda3, h.lambda4, h.e, h.omega, 2 * h.N);
    double m2, s2;
    count(h2, opt.eps_ker, r.i_at_2N, r.nu_at_2N, m2, s2);
    r.stabilized = r.i_at_2N == r.i_omega && r.nu_at_2N == r.nu_omega;
  } else {
    r.stabilized = true;
  }
  return r;
}

OmegaIndex morse_index(double l3, double l4, double e, cplx omega, const MorseOptions& opt) {
  return morse_index(hill_matrix(l3, l4, e, omega, opt.N), opt);
}

Eigen::MatrixXd parity_matrix(double l3, double l4, double e, int omega_sign, int parity, int N) {
  const int s = omega_sign > 0 ? 0 : 1;
  const bool x_cos = parity == 0;
  auto nu = [&](int n) { return n + 0.5 * s; };
  // admissible frequency indices per trig type
  auto admissible = [&](bool is_cos, int n) { return is_cos || nu(n) > 0.0; };
  std::vector<int> xi(N + 1, -1), yi(N + 1, -1);
  int dim = 0;
  for (int n = 0; n <= N; ++n)
    if (admissible(x_cos, n)) xi[n] = dim++;
  for (int n = 0; n <= N; ++n)
    if (admissible(!x_cos, n)) yi[n] = dim++;

  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(dim, dim);
  // term g * trig(nu_n t) in equation `eq` (0: x-equation, 1: y-equation), times (1 + e cos t)
  auto deposit = [&](int eq, bool is_cos, int n, int col, double g) {
    const std::vector<int>& rows = eq == 0 ? xi : yi;
    auto put = [&](int m, double v) {
      if (m < 0 || m > N || rows[m] < 0) return;
      A(rows[m], col) += v;
    };
    put(n, g);
    put(n + 1, 0.5 * e * g);
    const double lo = nu(n) - 1.0;
    if (lo > 0.0 || (lo == 0.0 && is_cos)) {
      put(n - 1, 0.5 * e * g);
    } else if (lo < 0.0) {
      const int m = static_cast<int>(std::lround(-lo - 0.5 * s));
      put(m, (is_cos ? 1.0 : -1.0) * 0.5 * e * g);
    }
  };
  for (int n = 0; n <= N; ++n) {
    const double w = nu(n);
    if (xi[n] >= 0) {
      const int col = xi[n];
      deposit(0, x_cos, n, col, -w * w);                        // x''
      deposit(1, !x_cos, n, col, x_cos ? -2.0 * w : 2.0 * w);  // +2x'
      A(xi[n], col) -= l3;
    }
    if (yi[n] >= 0) {
      const int col = yi[n];
      deposit(1, !x_cos, n, col, -w * w);                      // y''
      deposit(0, x_cos, n, col, x_cos ? -2.0 * w : 2.0 * w);  // -2y'
      A(yi[n], col) -= l4;
    }
  }
  return A;
}

int parity_det_sign(double l3, double l4, double e, int omega_sign, int parity, int N) {
  const Eigen::MatrixXd A = parity_matrix(l3, l4, e, omega_sign, parity, N);
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(A);
  int sign = lu.permutationP().determinant() > 0 ? 1 : -1;
  const Eigen::MatrixXd& U = lu.matrixLU();
  for (int i = 0; i < U.rows(); ++i) {
    if (U(i, i) == 0.0) return 0;
    if (U(i, i) < 0) sign = -sign;
  }
  return sign;
}

namespace {

// co-moving frame real series -> rotating-frame Fourier coefficients on modes -(N+1)..N+1
Eigen::VectorXcd to_rotating(const Eigen::VectorXd& xc, bool x_is_cos, const Eigen::VectorXd& yc, int N) {
  const int K = N + 1;
  std::vector<Eigen::Vector2cd> u(2 * N + 1, Eigen::Vector2cd::Zero());
  auto add = [&](int comp, bool is_cos, int n, double v) {
    if (n == 0) {
      if (is_cos) u[N](comp) += v;
      return;
    }
    if (is_cos) {
      u[N + n](comp) += 0.5 * v;
      u[N - n](comp) += 0.5 * v;
    } else {
      u[N + n](comp) += v / cplx(0, 2);
      u[N - n](comp) -= v / cplx(0, 2);
    }
  };
  for (int n = 0; n <= N; ++n) {
    add(0, x_is_cos, n, xc(n));
    add(1, !x_is_cos, n, yc(n));
  }
  Eigen::Matrix2cd P, Q;
  P << 0.5, cplx(0, 0.5), cplx(0, -0.5), 0.5;
  Q << 0.5, cplx(0, -0.5), cplx(0, 0.5), 0.5;
  Eigen::VectorXcd X = Eigen::VectorXcd::Zero(2 * (2 * K + 1));
  for (int k = -K; k <= K; ++k) {
    Eigen::Vector2cd v = Eigen::Vector2cd::Zero();
    if (k - 1 >= -N && k - 1 <= N) v += P * u[k - 1 + N];
    if (k + 1 >= -N && k + 1 <= N) v += Q * u[k + 1 + N];
    X.segment<2>(2 * (k + K)) = v;
  }
  return X;
}

}  // namespace

KernelSolution kernel_fourier_solution(double l3, double l4, double e, int N) {
  if (!(l4 < 0.0)) throw std::domain_error("kernel_fourier_solution: requires bt = -l4 > 0");
  KernelSolution ks;
  ks.N = N;
  const Eigen::MatrixXd A0 = parity_matrix(l3, l4, e, 1, 0, N);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(A0, Eigen::ComputeFullV);
  Eigen::VectorXd v = svd.matrixV().col(A0.cols() - 1);
  Eigen::Index imax;
  v.cwiseAbs().maxCoeff(&imax);
  if (v(imax) < 0) v = -v;
  ks.recurrence_residual_ad = (A0 * v).norm() / v.norm();

  ks.a = Eigen::VectorXd::Zero(N + 1);
  ks.d = Eigen::VectorXd::Zero(N + 1);
  for (int n = 0; n <= N; ++n) ks.a(n) = v(n);
  for (int n = 1; n <= N; ++n) ks.d(n) = v(N + n);

  ks.b = Eigen::VectorXd::Zero(N + 1);
  ks.c = Eigen::VectorXd::Zero(N + 1);
  for (int n = 1; n <= N; ++n) {
    ks.b(n) = ks.a(n);
    ks.c(n) = -ks.d(n);
  }
  ks.c(0) = e * (ks.a(1) + 0.5 * ks.d(1)) / l4;

  const Eigen::MatrixXd A1 = parity_matrix(l3, l4, e, 1, 1, N);
  Eigen::VectorXd w(A1.cols());
  for (int n = 1; n <= N; ++n) w(n - 1) = ks.b(n);
  for (int n = 0; n <= N; ++n) w(N + n) = ks.c(n);
  ks.recurrence_residual_bc = (A1 * w).norm() / w.norm();

  ks.X1 = to_rotating(ks.a, true, ks.d, N);
  ks.X2 = to_rotating(ks.b, false, ks.c, N);
  const HillOperator h = hill_matrix(l3, l4, e, 1.0, N + 1);
  ks.hill_residual_1 = (h.H * ks.X1).norm() / (h.potential_scale * ks.X1.norm());
  ks.hill_residual_2 = (h.H * ks.X2).norm() / (h.potential_scale * ks.X2.norm());
  const Eigen::VectorXcd n1 = ks.X1.normalized(), n2 = ks.X2.normalized();
  ks.gram_det = 1.0 - std::norm(n1.dot(n2));
  return ks;
}

PlaneCurve from_comoving(std::function<Eigen::Vector2d(double)> u, std::function<Eigen::Vector2d(double)> du) {
  PlaneCurve c;
  c.x = [u](double t) { return Eigen::Vector2d(rot2(t) * u(t)); };
  c.dx = [u, du](double t) {
    Mat2 dr;
    dr << -std::sin(t), -std::cos(t), std::cos(t), -std::sin(t);
    return Eigen::Vector2d(dr * u(t) + rot2(t) * du(t));
  };
  return c;
}

namespace {

double integrate(const std::function<double(double)>& g, double tol) {
  double err = 0.0;
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(g, 0.0, kTwoPi, 20, tol, &err);
}

}  // namespace

double potential_form(double k3, double k4, const std::function<double(double)>& w, const PlaneCurve& c,
                      double tol) {
  return integrate(
      [&](double t) {
        const Mat2 r = rot2(t);
        const Eigen::Vector2d u = r.transpose() * c.x(t);
        return w(t) * (k3 * u(0) * u(0) + k4 * u(1) * u(1));
      },
      tol);
}

double kinetic_form(const PlaneCurve& c, double tol) {
  return integrate([&](double t) { return c.dx(t).squaredNorm() - c.x(t).squaredNorm(); }, tol);
}

double quadratic_form(double l3, double l4, double e, const PlaneCurve& c, double tol) {
  return kinetic_form(c, tol) +
         potential_form(l3, l4, [e](double t) { return 1.0 / (1.0 + e * std::cos(t)); }, c, tol);
}

}  // namespace ere
