#include "ere/index.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

namespace ere {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

double cluster_tol(const Mat4& m) { return std::max(1e-6, 4.0 * std::sqrt(kEps * m.norm())); }

// Vector w in ker (M - sI)^2 outside ker (M - sI); returns b = -sign((Aw)^T J w).
int n1_sign(const Mat4& m, double s) {
  const Mat4 a = m - s * Mat4::Identity();
  const Mat4 a2 = a * a;
  Eigen::JacobiSVD<Mat4> svd(a2, Eigen::ComputeFullV);
  const Eigen::Matrix<double, 4, 2> v2 = svd.matrixV().rightCols<2>();
  Eigen::JacobiSVD<Eigen::Matrix<double, 4, 2>> svd2(a * v2, Eigen::ComputeFullV);
  const Vec4 w = v2 * svd2.matrixV().col(0);
  const double val = (a * w).dot(j4() * w);
  return val > 0 ? -1 : 1;
}

}  // namespace

NullityInfo nu_omega_info(const Mat4& m, cplx omega, double rel_tol) {
  const Eigen::Vector4d d = balance4(m);
  const Mat4 b = d.cwiseInverse().asDiagonal() * m * d.asDiagonal();
  const Mat4c a = b.cast<cplx>() - omega * Mat4c::Identity();
  Eigen::JacobiSVD<Mat4c> svd(a);
  NullityInfo info;
  info.singular_values = svd.singularValues();
  // A hyperbolic pair puts one huge singular value on the expanding direction; it says
  // nothing about the accuracy of the block near omega, so scale by the second one. The
  // floor covers rounding in M itself.
  info.threshold = std::max(rel_tol * std::max(1.0, info.singular_values(1)), 100.0 * kEps * info.singular_values(0));
  for (int i = 0; i < 4; ++i)
    if (info.singular_values(i) <= info.threshold) ++info.nu;
  return info;
}

int nu_omega(const Mat4& m, cplx omega, double rel_tol) { return nu_omega_info(m, omega, rel_tol).nu; }

cplx d_omega_complex(const Mat4& m, cplx omega) {
  const Mat4c a = m.cast<cplx>() - omega * Mat4c::Identity();
  return -std::conj(omega) * std::conj(omega) * a.determinant();
}

double d_omega(const Mat4& m, cplx omega) { return d_omega_complex(m, omega).real(); }

int krein_sign_of_vector(const Vec4c& v) {
  const Vec4c jv = j4().cast<cplx>() * v;
  const cplx g = cplx(0.0, -1.0) * v.dot(jv);  // v^* (-iJ) v; dot conjugates v
  return g.real() >= 0.0 ? 1 : -1;
}

int krein_signature(const Mat4& m, cplx lambda, double unit_tol) {
  const Spectrum4 sp = eig4(m, {unit_tol});
  int best = 0;
  for (int j = 1; j < 4; ++j)
    if (std::abs(sp.values[j] - lambda) < std::abs(sp.values[best] - lambda)) best = j;
  const cplx l = sp.values[best];
  const double ctol = cluster_tol(m);
  if (!sp.on_unit[best]) throw std::invalid_argument("krein_signature: eigenvalue is off the unit circle");
  if (std::abs(l.imag()) <= ctol) throw std::invalid_argument("krein_signature: eigenvalue is real");
  for (int j = 0; j < 4; ++j)
    if (j != best && std::abs(sp.values[j] - l) <= ctol)
      throw NumericalError("krein_signature: repeated eigenvalue (N2-suspect)");
  return krein_sign_of_vector(sp.vectors.col(best));
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::strongly_stable: return "strongly-stable";
    case Verdict::unstable: return "unstable";
    case Verdict::hyperbolic: return "hyperbolic";
    case Verdict::boundary: return "boundary";
  }
  return "boundary";
}

namespace {

std::string num(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  return buf;
}

int order_key(const NormalFormBlock& b) {
  using K = NormalFormBlock::Kind;
  switch (b.kind) {
    case K::I4: return 0;
    case K::I2: return 1;
    case K::N1: return b.value > 0 ? 2 : 6;
    case K::N2: return b.value > 0 ? 3 : 7;
    case K::R: return 4;
    case K::minus_I2: return 5;
    case K::D: return b.value < 0 ? 8 : 9;
    case K::quad: return 10;
  }
  return 11;
}

}  // namespace

std::string NormalFormBlock::symbol() const {
  switch (kind) {
    case Kind::D: return value > 0 ? "D(2)" : "D(-2)";
    case Kind::R: return "R(θ)";
    case Kind::I2: return "I2";
    case Kind::minus_I2: return "-I2";
    case Kind::I4: return "I4";
    case Kind::N1: return std::string("N1(") + (value > 0 ? "1," : "-1,") + (b > 0 ? "1)" : "-1)");
    case Kind::N2: return "N2-suspect";
    case Kind::quad: return "complex-saddle";
  }
  return "?";
}

std::string NormalFormBlock::detail() const {
  switch (kind) {
    case Kind::D: return "D(" + num(value) + ")";
    case Kind::R: return "R(" + num(value) + ")";
    case Kind::N2: return "N2-suspect(" + num(value) + ")";
    default: return symbol();
  }
}

std::vector<double> NormalForm::angles() const {
  std::vector<double> a;
  for (const auto& b : blocks)
    if (b.kind == NormalFormBlock::Kind::R) a.push_back(b.value);
  return a;
}

NormalForm classify_normal_form(const Mat4& m, const ClassifyOptions& opt) {
  using K = NormalFormBlock::Kind;
  NormalForm nf;
  nf.spectrum = eig4(m, {opt.unit_tol});
  const Spectrum4& sp = nf.spectrum;
  const double ctol = cluster_tol(m);
  nf.nu_plus1 = nu_omega(m, 1.0, opt.nu_rel_tol);
  nf.nu_minus1 = nu_omega(m, -1.0, opt.nu_rel_tol);
  nf.unit_margin = sp.off_margin;

  std::array<bool, 4> used{};
  bool suspect = false;

  for (const double s : {1.0, -1.0}) {
    const int nu = s > 0 ? nf.nu_plus1 : nf.nu_minus1;
    std::vector<int> idx;
    for (int j = 0; j < 4; ++j)
      if (std::abs(sp.values[j] - s) <= ctol) idx.push_back(j);
    if (nu == 0) continue;
    if (idx.size() < 2) {
      suspect = true;
      continue;
    }
    for (int j : idx) used[j] = true;
    const std::size_t a = idx.size();
    if (a == 2) {
      if (nu >= 2) {
        nf.blocks.push_back({s > 0 ? K::I2 : K::minus_I2, s, 0});
      } else {
        nf.blocks.push_back({K::N1, s, n1_sign(m, s)});
      }
    } else if (a == 4 && nu == 4) {
      nf.blocks.push_back({K::I4, s, 0});
    } else if (a == 4 && nu == 3) {
      nf.blocks.push_back({s > 0 ? K::I2 : K::minus_I2, s, 0});
      nf.blocks.push_back({K::N1, s, n1_sign(m, s)});
    } else {
      nf.blocks.push_back({K::N2, s, 0});
      suspect = true;
    }
  }

  // Off-circle eigenvalues.
  std::vector<int> off;
  for (int j = 0; j < 4; ++j)
    if (!used[j] && !sp.on_unit[j]) off.push_back(j);
  for (int j : off) {
    const cplx l = sp.values[j];
    if (std::abs(std::abs(l) - 1.0) <= 10.0 * sp.unit_tol) suspect = true;
  }
  {
    std::vector<int> real_out, cplx_out;
    for (int j : off) {
      const cplx l = sp.values[j];
      if (std::abs(l.imag()) <= ctol * std::max(1.0, std::abs(l))) {
        if (std::abs(l) > 1.0) real_out.push_back(j);
      } else {
        cplx_out.push_back(j);
      }
    }
    for (int j : real_out) nf.blocks.push_back({K::D, sp.values[j].real(), 0});
    if (!cplx_out.empty()) nf.blocks.push_back({K::quad, std::abs(sp.values[cplx_out.front()]), 0});
    for (int j : off) used[j] = true;
  }

  // Unit-circle eigenvalues in the upper half plane give R blocks.
  std::vector<int> upper;
  for (int j = 0; j < 4; ++j) {
    if (used[j]) continue;
    const cplx l = sp.values[j];
    if (l.imag() > ctol) {
      upper.push_back(j);
    } else if (std::abs(l.imag()) <= ctol) {
      // real eigenvalue on the circle that is not a certified +-1 degeneracy
      suspect = true;
    }
  }
  std::vector<bool> upper_done(upper.size(), false);
  for (std::size_t u = 0; u < upper.size(); ++u) {
    if (upper_done[u]) continue;
    const int j = upper[u];
    const cplx l = sp.values[j];
    const double alpha = std::arg(l);
    const int k = krein_sign_of_vector(sp.vectors.col(j));
    int partner = -1;
    for (std::size_t w = u + 1; w < upper.size(); ++w)
      if (!upper_done[w] && std::abs(sp.values[upper[w]] - l) <= ctol) partner = static_cast<int>(w);
    if (partner >= 0) {
      const int k2 = krein_sign_of_vector(sp.vectors.col(upper[partner]));
      upper_done[partner] = true;
      if (k2 != k) {
        nf.blocks.push_back({K::N2, alpha, 0});
        suspect = true;
        upper_done[u] = true;
        continue;
      }
      nf.blocks.push_back({K::R, k > 0 ? alpha : kTwoPi - alpha, 0});
    }
    nf.blocks.push_back({K::R, k > 0 ? alpha : kTwoPi - alpha, 0});
    upper_done[u] = true;
  }

  std::stable_sort(nf.blocks.begin(), nf.blocks.end(), [](const NormalFormBlock& a, const NormalFormBlock& b) {
    const int ka = order_key(a), kb = order_key(b);
    if (ka != kb) return ka < kb;
    return a.value < b.value;
  });

  int n_r = 0;
  for (const auto& b : nf.blocks) n_r += b.kind == K::R;
  int r_seen = 0;
  for (std::size_t i = 0; i < nf.blocks.size(); ++i) {
    const auto& b = nf.blocks[i];
    std::string sym = b.symbol();
    if (b.kind == K::R && n_r > 1) sym = "R(θ" + std::to_string(++r_seen) + ")";
    if (i) {
      nf.tag += "⋄";
      nf.detail += "⋄";
    }
    nf.tag += sym;
    nf.detail += b.detail();
  }

  nf.n2_suspect = suspect;
  int clearly_off = 0;
  for (int j = 0; j < 4; ++j)
    if (std::abs(std::abs(sp.values[j]) - 1.0) > 10.0 * sp.unit_tol) ++clearly_off;
  if (clearly_off == 4) {
    nf.verdict = Verdict::hyperbolic;
  } else if (clearly_off > 0) {
    nf.verdict = Verdict::unstable;
  } else if (suspect || nf.nu_plus1 > 0 || nf.nu_minus1 > 0) {
    nf.verdict = Verdict::boundary;
  } else {
    nf.verdict = Verdict::strongly_stable;
  }
  return nf;
}

std::pair<int, int> splitting_numbers(const NormalForm& nf, cplx omega, double tol) {
  using K = NormalFormBlock::Kind;
  int sp = 0, sm = 0;
  for (const auto& b : nf.blocks) {
    switch (b.kind) {
      case K::R: {
        const bool lower_half_angle = b.value < kPi;  // theta in (0, pi)
        const double alpha = lower_half_angle ? b.value : kTwoPi - b.value;
        const cplx up = std::polar(1.0, alpha);
        if (std::abs(omega - up) <= tol) {
          if (lower_half_angle) ++sm; else ++sp;
        } else if (std::abs(omega - std::conj(up)) <= tol) {
          if (lower_half_angle) ++sp; else ++sm;
        }
        break;
      }
      case K::I2:
      case K::minus_I2:
        if (std::abs(omega - b.value) <= tol) { ++sp; ++sm; }
        break;
      case K::I4:
        if (std::abs(omega - b.value) <= tol) { sp += 2; sm += 2; }
        break;
      case K::N1:
        if (std::abs(omega - b.value) <= tol) {
          // N1(1,1) and N1(-1,-1) split as (1,1); N1(1,-1) and N1(-1,1) as (0,0)
          if ((b.value > 0 && b.b > 0) || (b.value < 0 && b.b < 0)) { ++sp; ++sm; }
        }
        break;
      case K::N2:
        if (std::abs(omega - std::polar(1.0, b.value)) <= tol ||
            std::abs(omega - std::polar(1.0, -b.value)) <= tol)
          throw std::domain_error("splitting numbers undefined for an N2-suspect block");
        break;
      case K::D:
      case K::quad:
        break;
    }
  }
  return {sp, sm};
}

int index_via_splitting(const NormalForm& nf, int i1, cplx omega) {
  using K = NormalFormBlock::Kind;
  for (const auto& b : nf.blocks)
    if (b.kind == K::N2) throw std::domain_error("index_via_splitting: N2-suspect decomposition");
  constexpr double tol = 1e-9;
  if (std::abs(omega - 1.0) <= tol) return i1;
  if (omega.imag() < 0) omega = std::conj(omega);
  const double phi = std::arg(omega);  // (0, pi]
  int i = i1 + splitting_numbers(nf, 1.0, tol).first;
  for (const auto& b : nf.blocks) {
    if (b.kind != K::R) continue;
    const double alpha = b.value < kPi ? b.value : kTwoPi - b.value;
    // S+ - S- of this block at its upper eigenvalue e^{i alpha}
    if (alpha < phi - tol) i += (b.value < kPi) ? -1 : 1;
  }
  i -= splitting_numbers(nf, omega, tol).second;
  return i;
}

std::vector<int> index_via_splitting(const NormalForm& nf, int i1, const std::vector<cplx>& omegas) {
  std::vector<int> out;
  out.reserve(omegas.size());
  for (const cplx& w : omegas) out.push_back(index_via_splitting(nf, i1, w));
  return out;
}

}  // namespace ere
