#include "ere/systems.hpp"

#include <boost/numeric/odeint.hpp>

#include <cmath>
#include <stdexcept>

namespace ere {

namespace odeint = boost::numeric::odeint;

std::string to_string(Case c) {
  switch (c) {
    case Case::nonconvex: return "nonconvex";
    case Case::convex: return "convex";
    case Case::lagrange: return "lagrange";
    case Case::custom: return "custom";
  }
  return "custom";
}

Case case_from_string(const std::string& s) {
  if (s == "nonconvex") return Case::nonconvex;
  if (s == "convex") return Case::convex;
  if (s == "lagrange") return Case::lagrange;
  if (s == "custom") return Case::custom;
  throw std::invalid_argument("unknown case '" + s + "'");
}

namespace {

void check_e(double e) {
  if (!(e >= 0.0 && e < 1.0)) throw std::invalid_argument("eccentricity must lie in [0, 1)");
}

void check_beta(double beta) {
  if (!(beta >= 0.0 && beta <= 6.75)) throw std::invalid_argument("beta must lie in [0, 27/4]");
}

}  // namespace

EssentialSystem EssentialSystem::nonconvex_tilde(double bt, double e) {
  check_e(e);
  if (!(bt >= -1.8)) throw std::invalid_argument("non-convex parameter must be >= -9/5");
  EssentialSystem s;
  s.lambda3 = (9.0 + 3.0 * bt) / 2.0;
  s.lambda4 = -bt;
  s.e = e;
  s.tag = Case::nonconvex;
  s.param = bt;
  return s;
}

EssentialSystem EssentialSystem::nonconvex(double beta, double e) {
  check_beta(beta);
  return nonconvex_tilde(std::sqrt(9.0 - beta), e);
}

EssentialSystem EssentialSystem::convex(double beta, double e) {
  check_beta(beta);
  check_e(e);
  const double s = std::sqrt(9.0 - beta);
  EssentialSystem sys;
  sys.lambda3 = (9.0 - 3.0 * s) / 2.0;
  sys.lambda4 = s;
  sys.e = e;
  sys.tag = Case::convex;
  sys.param = beta;
  return sys;
}

EssentialSystem EssentialSystem::lagrange(double beta, double e) {
  check_beta(beta);
  check_e(e);
  const double s = std::sqrt(9.0 - beta);
  EssentialSystem sys;
  sys.lambda3 = (3.0 + s) / 2.0;
  sys.lambda4 = (3.0 - s) / 2.0;
  sys.e = e;
  sys.tag = Case::lagrange;
  sys.param = beta;
  return sys;
}

EssentialSystem EssentialSystem::custom(double l3, double l4, double e) {
  check_e(e);
  EssentialSystem sys;
  sys.lambda3 = l3;
  sys.lambda4 = l4;
  sys.e = e;
  sys.tag = Case::custom;
  return sys;
}

EssentialSystem EssentialSystem::with_param(double p) const {
  switch (tag) {
    case Case::nonconvex: return nonconvex_tilde(p, e);
    case Case::convex: return convex(p, e);
    case Case::lagrange: return lagrange(p, e);
    case Case::custom: return *this;
  }
  return *this;
}

EssentialSystem EssentialSystem::with_e(double e_new) const {
  check_e(e_new);
  EssentialSystem s = *this;
  s.e = e_new;
  return s;
}

Mat4 build_B(const EssentialSystem& sys, double t) {
  const double f = 1.0 / (1.0 + sys.e * std::cos(t));
  Mat4 b;
  b << 1, 0, 0, 1,
       0, 1, -1, 0,
       0, -1, 1 - sys.lambda3 * f, 0,
       1, 0, 0, 1 - sys.lambda4 * f;
  return b;
}

Mat4 build_JB(const EssentialSystem& sys, double t) { return j4() * build_B(sys, t); }

std::array<double, 5> circular_char_poly(double l3, double l4) {
  return {l3 * l4, 0.0, 4.0 - l3 - l4, 0.0, 1.0};
}

namespace {

using State = std::array<double, 16>;  // column-major 4x4

struct Rhs {
  const EssentialSystem* sys;
  void operator()(const State& g, State& dg, double t) const {
    const double f = 1.0 / (1.0 + sys->e * std::cos(t));
    const double a = 1.0 - sys->lambda3 * f;
    const double b = 1.0 - sys->lambda4 * f;
    // rows of J B for z = (p1, p2, x1, x2):
    //   p1' = -(-p2 + a x1)      p2' = -(p1 + b x2)
    //   x1' = p1 + x2            x2' = p2 - x1
    for (int c = 0; c < 4; ++c) {
      const double p1 = g[4 * c + 0], p2 = g[4 * c + 1], x1 = g[4 * c + 2], x2 = g[4 * c + 3];
      dg[4 * c + 0] = p2 - a * x1;
      dg[4 * c + 1] = -p1 - b * x2;
      dg[4 * c + 2] = p1 + x2;
      dg[4 * c + 3] = p2 - x1;
    }
  }
};

State identity_state() {
  State s{};
  for (int i = 0; i < 4; ++i) s[5 * i] = 1.0;
  return s;
}

Mat4 to_mat(const State& s) {
  Mat4 m;
  for (int c = 0; c < 4; ++c)
    for (int r = 0; r < 4; ++r) m(r, c) = s[4 * c + r];
  return m;
}

Mat4 r4(double t) {
  Mat4 m = Mat4::Zero();
  m.block<2, 2>(0, 0) = rot2(t);
  m.block<2, 2>(2, 2) = rot2(t);
  return m;
}

void check_cap(const EssentialSystem& sys, const MonodromyOptions& opt) {
  if (sys.e > opt.e_cap)
    throw std::invalid_argument("eccentricity above the integration cap " + std::to_string(opt.e_cap));
}

}  // namespace

Monodromy integrate_monodromy(const EssentialSystem& sys, const MonodromyOptions& opt) {
  check_cap(sys, opt);
  auto stepper = odeint::make_controlled(opt.tol, opt.tol, odeint::runge_kutta_fehlberg78<State>());
  State g = identity_state();
  std::size_t steps = 0;
  try {
    steps = odeint::integrate_adaptive(stepper, Rhs{&sys}, g, 0.0, kTwoPi, 0.01);
  } catch (const std::exception& ex) {
    throw NumericalError(std::string("monodromy integration failed (loosen tol or lower e): ") + ex.what());
  }
  Monodromy m;
  m.gamma2pi = SymplecticMatrix::from(to_mat(g));
  if (!m.gamma2pi.m.allFinite()) throw NumericalError("monodromy integration produced non-finite entries");
  m.steps = steps;
  m.defect = m.gamma2pi.defect;
  m.tol_used = opt.tol;
  return m;
}

std::vector<PathSample> rotated_path(const EssentialSystem& sys, std::size_t n,
                                     const MonodromyOptions& opt) {
  check_cap(sys, opt);
  if (n == 0) n = 1;
  std::vector<double> times(n + 1);
  for (std::size_t k = 0; k <= n; ++k) times[k] = kTwoPi * static_cast<double>(k) / static_cast<double>(n);
  times.back() = kTwoPi;

  std::vector<PathSample> out;
  out.reserve(n + 1);
  auto stepper = odeint::make_controlled(opt.tol, opt.tol, odeint::runge_kutta_fehlberg78<State>());
  State g = identity_state();
  odeint::integrate_times(stepper, Rhs{&sys}, g, times.begin(), times.end(), 0.01,
                          [&](const State& s, double t) {
                            PathSample ps;
                            ps.t = t;
                            ps.gamma = to_mat(s);
                            ps.xi = r4(t) * ps.gamma;
                            out.push_back(ps);
                          });
  return out;
}

Mat4 rotated_generator(const EssentialSystem& sys, double t) {
  const double f = 1.0 / (1.0 + sys.e * std::cos(t));
  Mat2 k = Mat2::Zero();
  k(0, 0) = sys.lambda3 * f;
  k(1, 1) = sys.lambda4 * f;
  const Mat2 r = rot2(t);
  Mat4 h = Mat4::Identity();
  h.block<2, 2>(2, 2) = r * (Mat2::Identity() - k) * r.transpose();
  return j4() * h;
}

}  // namespace ere
