#include "ere/curves.hpp"

#include "ere/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace ere {

double beta_hat(double n) {
  const double n2 = n * n;
  return (n2 - 9.0 + std::sqrt(25.0 * n2 * n2 - 6.0 * n2 + 81.0)) / 6.0;
}
double beta_star() { return (1331.0 - 35.0 * std::sqrt(1297.0)) / 288.0; }
double beta_star_star() { return 16.0 * (182.0 - 37.0 * std::sqrt(21.0)) / 625.0; }
double xi_slope() { return (41.0 + 5.0 * std::sqrt(1297.0)) / (48.0 * std::sqrt(1297.0)); }
double convex_slope() { return (2525.0 + 67.0 * std::sqrt(1297.0)) / (288.0 * std::sqrt(1297.0)); }

EssentialSystem system_at(Case c, double p, double e) {
  switch (c) {
    case Case::nonconvex: return EssentialSystem::nonconvex_tilde(p, e);
    case Case::convex: return EssentialSystem::convex(p, e);
    case Case::lagrange: return EssentialSystem::lagrange(p, e);
    case Case::custom: break;
  }
  throw std::invalid_argument("system_at: custom systems have no curve coordinate");
}

int index_direction(Case c) {
  if (c == Case::nonconvex) return 1;
  if (c == Case::convex) return -1;
  return 0;
}

int FindOptions::truncation(double e) const {
  if (N > 0) return N;
  return e <= 0.8 ? 64 : 128;
}

namespace {

int det_sign(Case c, double p, double e, int w, int parity, int N) {
  const EssentialSystem s = system_at(c, p, e);
  return parity_det_sign(s.lambda3, s.lambda4, e, w, parity, N);
}

struct RawRoot {
  double x;
  double bracket;
  int parity;
};

OmegaIndex hill_index_at(Case c, double p, double e, cplx omega, const FindOptions& opt) {
  const EssentialSystem s = system_at(c, p, e);
  MorseOptions mo = opt.hill;
  if (mo.N <= 0) mo.N = opt.truncation(e);
  return morse_index(s.lambda3, s.lambda4, e, omega, mo);
}

}  // namespace

DegenerateSlice find_degenerate(Case c, int omega_sign, double e, double lo, double hi, const FindOptions& opt) {
  if (!(hi > lo)) throw std::invalid_argument("find_degenerate: empty window");
  const int w = omega_sign > 0 ? 1 : -1;
  const int N = opt.truncation(e);
  const int n = std::max(2, static_cast<int>(std::ceil((hi - lo) / opt.scan_step)));
  std::vector<double> xs(n + 1);
  for (int i = 0; i <= n; ++i) xs[i] = lo + (hi - lo) * i / n;
  xs[n] = hi;

  std::vector<RawRoot> raw;
  for (int parity = 0; parity < 2; ++parity) {
    std::vector<int> sg(n + 1);
    for (int i = 0; i <= n; ++i) sg[i] = det_sign(c, xs[i], e, w, parity, N);
    for (int i = 0; i <= n; ++i)
      if (sg[i] == 0) raw.push_back({xs[i], 0.0, parity});
    for (int i = 0; i < n; ++i) {
      if (sg[i] == 0 || sg[i + 1] == 0 || sg[i] == sg[i + 1]) continue;
      double a = xs[i], b = xs[i + 1];
      const int sa = sg[i];
      bool exact = false;
      while (b - a > opt.xtol) {
        const double m = 0.5 * (a + b);
        const int sm = det_sign(c, m, e, w, parity, N);
        if (sm == 0) {
          a = b = m;
          exact = true;
          break;
        }
        (sm == sa ? a : b) = m;
      }
      raw.push_back({0.5 * (a + b), exact ? 0.0 : b - a, parity});
    }
  }
  std::sort(raw.begin(), raw.end(), [](const RawRoot& a, const RawRoot& b) { return a.x < b.x; });

  DegenerateSlice sl;
  sl.c = c;
  sl.omega_sign = w;
  sl.e = e;
  sl.lo = lo;
  sl.hi = hi;
  for (std::size_t i = 0; i < raw.size();) {
    DegeneratePoint p;
    p.beta = raw[i].x;
    p.bracket = raw[i].bracket;
    p.parities = 1 << raw[i].parity;
    std::size_t j = i + 1;
    double lo_x = raw[i].x, hi_x = raw[i].x;
    while (j < raw.size() && raw[j].x - hi_x <= opt.merge_tol && !(p.parities & (1 << raw[j].parity))) {
      p.parities |= 1 << raw[j].parity;
      hi_x = raw[j].x;
      p.bracket = std::max(p.bracket, raw[j].bracket);
      ++j;
    }
    p.multiplicity = static_cast<int>(j - i);
    if (p.multiplicity > 1) {
      p.beta = 0.5 * (lo_x + hi_x);
      p.bracket = std::max(p.bracket, hi_x - lo_x);
    }
    sl.points.push_back(p);
    i = j;
  }

  const cplx omega = w > 0 ? cplx(1.0) : cplx(-1.0);
  if (opt.certify) {
    // Hill index on each gap
    std::vector<double> mids;
    if (sl.points.empty()) {
      mids.push_back(0.5 * (lo + hi));
    } else {
      mids.push_back(0.5 * (lo + sl.points.front().beta));
      for (std::size_t k = 1; k < sl.points.size(); ++k)
        mids.push_back(0.5 * (sl.points[k - 1].beta + sl.points[k].beta));
      mids.push_back(0.5 * (sl.points.back().beta + hi));
    }
    bool stable_gaps = true;
    for (double m : mids) {
      const OmegaIndex oi = hill_index_at(c, m, e, omega, opt);
      sl.interval_index.push_back(oi.i_omega);
      stable_gaps = stable_gaps && oi.stabilized && oi.nu_omega == 0;
    }
    const int dir = index_direction(c);
    for (std::size_t k = 0; k < sl.points.size(); ++k) {
      DegeneratePoint& p = sl.points[k];
      const EssentialSystem s = system_at(c, p.beta, e);
      const Monodromy M = integrate_monodromy(s);
      p.nu_monodromy = nu_omega(M.gamma2pi.m, omega, opt.nu_rel_tol);
      const OmegaIndex oi = hill_index_at(c, p.beta, e, omega, opt);
      p.nu_hill = oi.nu_omega;
      p.hill_stabilized = oi.stabilized;
      p.index_below = sl.interval_index[k];
      p.index_above = sl.interval_index[k + 1];
      const int jump = p.index_above - p.index_below;
      const bool dir_ok = dir == 0 || jump * dir > 0;
      p.certified = stable_gaps && p.hill_stabilized && p.nu_monodromy == p.multiplicity &&
                    p.nu_hill == p.multiplicity && std::abs(jump) == p.multiplicity && dir_ok;
      sl.all_certified = sl.all_certified && p.certified;
    }
  } else {
    sl.all_certified = false;
  }

  int offset = 0;
  if (index_direction(c) > 0 && !sl.interval_index.empty()) offset = sl.interval_index.front();
  int run = offset;
  for (DegeneratePoint& p : sl.points) {
    p.ordinal = run + 1;
    run += p.multiplicity;
  }
  return sl;
}

std::vector<GenericRoot> find_degenerate_generic(Case c, cplx omega, double e, double lo, double hi, int scan_points,
                                                 double xtol, int N) {
  MorseOptions mo;
  mo.N = N;
  mo.check_doubling = false;
  auto idx = [&](double p) {
    const EssentialSystem s = system_at(c, p, e);
    return morse_index(s.lambda3, s.lambda4, e, omega, mo).i_omega;
  };
  std::vector<double> xs(scan_points + 1);
  std::vector<int> iv(scan_points + 1);
  for (int i = 0; i <= scan_points; ++i) {
    xs[i] = lo + (hi - lo) * i / scan_points;
    iv[i] = idx(xs[i]);
  }
  std::vector<GenericRoot> out;
  for (int i = 0; i < scan_points; ++i) {
    if (iv[i] == iv[i + 1]) continue;
    // one jump at a time: bisect on "index equals the left value"
    double a = xs[i], b = xs[i + 1];
    const int ia = iv[i];
    while (b - a > xtol) {
      const double m = 0.5 * (a + b);
      (idx(m) == ia ? a : b) = m;
    }
    GenericRoot r;
    r.beta = 0.5 * (a + b);
    r.bracket = b - a;
    r.jump = idx(b) - ia;
    const Monodromy M = integrate_monodromy(system_at(c, r.beta, e));
    const NullityInfo ni = nu_omega_info(M.gamma2pi.m, omega, 1e-6);
    r.nu_monodromy = ni.nu;
    r.sigma_min = ni.singular_values(3);
    out.push_back(r);
    // further jumps inside the same scan cell
    if (idx(xs[i + 1]) != ia + r.jump) {
      iv[i] = ia + r.jump;
      xs[i] = b;
      --i;
    }
  }
  return out;
}

std::string curve_label(Case c, int omega_sign, int ordinal) {
  const std::string k = std::to_string(ordinal);
  if (c == Case::nonconvex) return (omega_sign > 0 ? "Gamma" : "Xi") + k;
  if (c == Case::convex && omega_sign < 0) {
    if (ordinal == 1) return "Gamma_l";
    if (ordinal == 2) return "Gamma_m";
  }
  return std::string(omega_sign > 0 ? "D+1_" : "D-1_") + k;
}

std::vector<double> default_e_grid(double e_max, double step) {
  std::vector<double> g;
  const int n = static_cast<int>(std::floor(e_max / step + 1e-9));
  for (int i = 0; i <= n; ++i) g.push_back(std::round(i * step * 1e12) / 1e12);
  return g;
}

namespace {

// point index covering ordinal k in a slice, or -1
int covering(const DegenerateSlice& s, int k) {
  for (std::size_t i = 0; i < s.points.size(); ++i) {
    const DegeneratePoint& p = s.points[i];
    if (k >= p.ordinal && k < p.ordinal + p.multiplicity) return static_cast<int>(i);
  }
  return -1;
}

std::map<double, DegenerateSlice> run_slices(Case c, int w, double lo, double hi, const std::vector<double>& es,
                                             const FindOptions& fo, int threads) {
  std::vector<DegenerateSlice> out(es.size());
  parallel_for(es.size(), [&](std::size_t i) { out[i] = find_degenerate(c, w, es[i], lo, hi, fo); }, threads);
  std::map<double, DegenerateSlice> m;
  for (std::size_t i = 0; i < es.size(); ++i) m[es[i]] = std::move(out[i]);
  return m;
}

}  // namespace

std::vector<DegenerateCurve> trace_curves(Case c, int omega_sign, double lo, double hi, std::vector<double> e_grid,
                                          const TraceOptions& opt) {
  const int w = omega_sign > 0 ? 1 : -1;
  std::sort(e_grid.begin(), e_grid.end());
  e_grid.erase(std::unique(e_grid.begin(), e_grid.end()), e_grid.end());
  std::map<double, DegenerateSlice> slices = run_slices(c, w, lo, hi, e_grid, opt.find, opt.threads);

  int max_ord = 0;
  auto update_max = [&] {
    max_ord = 0;
    for (const auto& [e, s] : slices)
      for (const auto& p : s.points) max_ord = std::max(max_ord, p.ordinal + p.multiplicity - 1);
  };
  update_max();

  if (opt.refine) {
    for (int pass = 0; pass < 4; ++pass) {
      std::vector<double> es;
      for (const auto& [e, s] : slices) es.push_back(e);
      std::set<double> add;
      for (std::size_t j = 1; j + 1 < es.size(); ++j) {
        for (int k = 1; k <= max_ord; ++k) {
          const int a = covering(slices[es[j - 1]], k), b = covering(slices[es[j]], k),
                    d = covering(slices[es[j + 1]], k);
          if (a < 0 || b < 0 || d < 0) continue;
          const double ya = slices[es[j - 1]].points[a].beta, yb = slices[es[j]].points[b].beta,
                       yd = slices[es[j + 1]].points[d].beta;
          const double h1 = es[j] - es[j - 1], h2 = es[j + 1] - es[j];
          const double bend = std::abs((yd - yb) / h2 - (yb - ya) / h1) * std::min(h1, h2);
          if (bend > opt.bend_tol) {
            if (h1 / 2 >= opt.min_step - 1e-12) add.insert(0.5 * (es[j - 1] + es[j]));
            if (h2 / 2 >= opt.min_step - 1e-12) add.insert(0.5 * (es[j] + es[j + 1]));
          }
        }
      }
      for (auto it = add.begin(); it != add.end();)
        it = slices.count(*it) ? add.erase(it) : std::next(it);
      if (add.empty()) break;
      auto more = run_slices(c, w, lo, hi, std::vector<double>(add.begin(), add.end()), opt.find, opt.threads);
      slices.merge(more);
      update_max();
    }
  }

  std::vector<DegenerateCurve> curves;
  std::vector<bool> used(max_ord + 2, false);
  for (int k = 1; k <= max_ord; ++k) {
    if (used[k]) continue;
    // merge with k + 1 if the same point carries both at every slice
    bool merge = k + 1 <= max_ord;
    bool any = false;
    for (const auto& [e, s] : slices) {
      const int a = covering(s, k), b = covering(s, k + 1);
      if (a >= 0 || b >= 0) any = true;
      if (a != b) merge = false;
    }
    if (!any) continue;
    DegenerateCurve cv;
    cv.c = c;
    cv.omega_sign = w;
    cv.ordinals = {k};
    cv.label = curve_label(c, w, k);
    cv.multiplicity = 1;
    if (merge) {
      cv.ordinals.push_back(k + 1);
      cv.label += "=" + curve_label(c, w, k + 1);
      cv.multiplicity = 2;
      used[k + 1] = true;
    }
    bool started = false;
    for (const auto& [e, s] : slices) {
      const int a = covering(s, k);
      if (a < 0) {
        if (started && cv.truncated.empty()) {
          char buf[96];
          std::snprintf(buf, sizeof buf, "left the window [%.15g, %.15g] before e = %.15g", lo, hi, e);
          cv.truncated = buf;
        }
        continue;
      }
      if (!cv.truncated.empty()) continue;
      const DegeneratePoint& p = s.points[a];
      CurveSample cs;
      cs.e = e;
      cs.beta = p.beta;
      cs.bracket = p.bracket;
      cs.nu = p.nu_monodromy >= 0 ? p.nu_monodromy : p.multiplicity;
      cs.certified = p.certified;
      cv.samples.push_back(cs);
      started = true;
    }
    if (cv.samples.empty()) continue;
    cv.start_beta = cv.samples.front().beta;
    for (std::size_t j = 2; j < cv.samples.size(); ++j) {
      const auto& A = cv.samples[j - 2];
      const auto& B = cv.samples[j - 1];
      const auto& C = cv.samples[j];
      const double secant = (B.beta - A.beta) / (B.e - A.e);
      const double pred = B.beta + secant * (C.e - B.e);
      const double scale = std::abs(B.beta - A.beta) + 1e-3 * (C.e - B.e);
      if (std::abs(C.beta - pred) > 10.0 * scale) cv.continuous = false;
    }
    curves.push_back(std::move(cv));
  }
  return curves;
}

DegenerateCurve trace_curve(Case c, int omega_sign, int ordinal, double lo, double hi,
                            const std::vector<double>& e_grid, const TraceOptions& opt) {
  for (auto& cv : trace_curves(c, omega_sign, lo, hi, e_grid, opt))
    if (std::find(cv.ordinals.begin(), cv.ordinals.end(), ordinal) != cv.ordinals.end()) return cv;
  throw std::runtime_error("trace_curve: no curve with ordinal " + std::to_string(ordinal) + " in the window");
}

namespace {

bool is_hyperbolic(double beta, double e) {
  const Monodromy M = integrate_monodromy(EssentialSystem::convex(beta, e));
  return classify_normal_form(M.gamma2pi.m).verdict == Verdict::hyperbolic;
}

}  // namespace

double hyperbolic_onset(double e, double lo, double xtol, double* bracket) {
  const double top = 27.0 / 4.0;
  if (!is_hyperbolic(top, e)) throw std::runtime_error("hyperbolic_onset: beta = 27/4 is not hyperbolic");
  double a = lo, b = top;
  if (is_hyperbolic(a, e)) a = 0.0;
  if (is_hyperbolic(a, e)) throw std::runtime_error("hyperbolic_onset: beta = 0 is hyperbolic");
  while (b - a > xtol) {
    const double m = 0.5 * (a + b);
    (is_hyperbolic(m, e) ? b : a) = m;
  }
  if (bracket) *bracket = b - a;
  return b;
}

ConvexBoundaries convex_boundaries(const std::vector<double>& e_grid, const BoundaryOptions& opt) {
  const std::size_t n = e_grid.size();
  ConvexBoundaries out;
  out.e = e_grid;
  out.beta_l.assign(n, 0.0);
  out.beta_m.assign(n, 0.0);
  out.beta_r.assign(n, 0.0);
  out.bracket_r.assign(n, 0.0);
  out.certified.assign(n, false);
  std::vector<std::string> errors(n);
  parallel_for(
      n,
      [&](std::size_t i) {
        const double e = e_grid[i];
        // no -1 degeneracy beyond 32/9 (positive operator)
        const DegenerateSlice s = find_degenerate(Case::convex, -1, e, 0.0, 32.0 / 9.0 + 0.05, opt.find);
        int total = 0;
        for (const auto& p : s.points) total += p.multiplicity;
        if (total != 2) {
          errors[i] = "expected two -1 degenerate points at e = " + std::to_string(e) + ", found " +
                      std::to_string(total);
          return;
        }
        out.beta_l[i] = s.points.front().beta;
        out.beta_m[i] = s.points.back().beta;
        double br = 0.0;
        out.beta_r[i] = hyperbolic_onset(e, out.beta_m[i], opt.xtol, &br);
        out.bracket_r[i] = br;
        out.certified[i] = s.all_certified && br <= 10 * opt.xtol;
        if (opt.paranoid) {
          const int m = static_cast<int>(std::ceil(6.75 / opt.paranoid_step));
          for (int k = 0; k <= m; ++k) {
            const double b = 6.75 * k / m;
            if (std::abs(b - out.beta_r[i]) < 1e-6) continue;
            if (is_hyperbolic(b, e) != (b > out.beta_r[i])) {
              char buf[160];
              std::snprintf(buf, sizeof buf,
                            "hyperbolic set is not an interval at e = %.15g: beta = %.15g disagrees with onset %.15g",
                            e, b, out.beta_r[i]);
              errors[i] = buf;
              return;
            }
          }
        }
      },
      opt.threads);
  for (const auto& err : errors)
    if (!err.empty()) throw std::runtime_error(err);
  return out;
}

int convex_region(double beta, double bl, double bm, double br, double tol) {
  auto near = [&](double x) { return std::abs(beta - x) <= tol; };
  if (near(bl) || near(bm) || near(br)) return 0;
  if (beta < bl) return 1;
  if (beta < bm) return 2;
  if (beta < br) return 3;
  return 4;
}

RegionMap region_classify(Case c, const std::vector<double>& params, const std::vector<double>& e_grid, int threads) {
  RegionMap map;
  map.c = c;
  std::optional<ConvexBoundaries> cb;
  if (c == Case::convex) {
    BoundaryOptions bo;
    bo.threads = threads;
    cb = convex_boundaries(e_grid, bo);
  }
  const std::size_t np = params.size();
  map.cells.resize(np * e_grid.size());
  parallel_for(
      map.cells.size(),
      [&](std::size_t idx) {
        const std::size_t ie = idx / np, ip = idx % np;
        RegionCell& cell = map.cells[idx];
        cell.beta = params[ip];
        cell.e = e_grid[ie];
        const EssentialSystem s =
            c == Case::nonconvex ? EssentialSystem::nonconvex(cell.beta, cell.e) : system_at(c, cell.beta, cell.e);
        const Monodromy M = integrate_monodromy(s);
        const NormalForm nf = classify_normal_form(M.gamma2pi.m);
        cell.tag = nf.tag;
        cell.detail = nf.detail;
        cell.verdict = nf.verdict;
        cell.unit_margin = nf.unit_margin;
        cell.angles = nf.angles();
        for (const cplx& v : nf.spectrum.values) cell.max_modulus = std::max(cell.max_modulus, std::abs(v));
        cell.max_modulus_above_one = cell.max_modulus >= 1.0 + 1e-6;
        if (cb) cell.region = convex_region(cell.beta, cb->beta_l[ie], cb->beta_m[ie], cb->beta_r[ie]);
      },
      threads);
  return map;
}

bool region_tag_matches(int region, const RegionCell& cell) {
  auto upper = [](double a) { return a > kPi && a < kTwoPi; };
  auto lower = [](double a) { return a > 0.0 && a < kPi; };
  const auto& an = cell.angles;
  switch (region) {
    case 1:
      return cell.tag == "R(θ1)⋄R(θ2)" && an.size() == 2 && upper(an[0]) && upper(an[1]) &&
             cell.verdict == Verdict::strongly_stable;
    case 2:
      return cell.tag == "R(θ)⋄D(-2)" && an.size() == 1 && upper(an[0]) && cell.verdict == Verdict::unstable;
    case 3:
      return cell.tag == "R(θ1)⋄R(θ2)" && an.size() == 2 &&
             ((upper(an[0]) && lower(an[1])) || (lower(an[0]) && upper(an[1]))) &&
             cell.verdict == Verdict::strongly_stable;
    case 4: return cell.verdict == Verdict::hyperbolic;
    default: return false;
  }
}

namespace {

const DegenerateCurve* holding(const std::vector<DegenerateCurve>& curves, int w, int k) {
  for (const auto& cv : curves)
    if (cv.omega_sign == w && std::find(cv.ordinals.begin(), cv.ordinals.end(), k) != cv.ordinals.end()) return &cv;
  return nullptr;
}

std::optional<double> at(const DegenerateCurve* cv, double e) {
  if (!cv) return std::nullopt;
  for (const auto& s : cv->samples)
    if (std::abs(s.e - e) < 1e-12) return s.beta;
  return std::nullopt;
}

}  // namespace

std::optional<double> curve_value(const std::vector<DegenerateCurve>& curves, const std::string& label, double e) {
  for (const auto& cv : curves) {
    std::stringstream ss(cv.label);
    std::string part;
    while (std::getline(ss, part, '='))
      if (part == label) return at(&cv, e);
  }
  return std::nullopt;
}

OrderingReport verify_ordering(const std::vector<DegenerateCurve>& curves, double start_tol) {
  OrderingReport rep;
  auto fail = [&](const std::string& s) {
    rep.ok = false;
    rep.violations.push_back(s);
  };
  char buf[200];
  std::set<double> es;
  for (const auto& cv : curves)
    for (const auto& s : cv.samples) es.insert(s.e);

  for (int n = 1;; ++n) {
    const DegenerateCurve* x1 = holding(curves, -1, 2 * n - 1);
    if (!x1) break;
    const DegenerateCurve* x2 = holding(curves, -1, 2 * n);
    const DegenerateCurve* g2 = holding(curves, 1, 2 * n);
    const DegenerateCurve* g3 = holding(curves, 1, 2 * n + 1);
    const DegenerateCurve* x3 = holding(curves, -1, 2 * n + 1);
    for (double e : es) {
      const auto a = at(x1, e), b = at(x2, e), g = at(g2, e), h = at(g3, e), x = at(x3, e);
      auto cmp = [&](bool cond, const char* what, double l, double r) {
        ++rep.comparisons;
        if (!cond) {
          std::snprintf(buf, sizeof buf, "n=%d e=%.15g: %s violated (%.15g vs %.15g)", n, e, what, l, r);
          fail(buf);
        }
      };
      if (a && b) cmp(*a <= *b + 1e-9, "Xi_{2n-1} <= Xi_{2n}", *a, *b);
      if (b && g) cmp(*b < *g, "Xi_{2n} < Gamma_{2n}", *b, *g);
      if (g && h) cmp(std::abs(*g - *h) <= 1e-7, "Gamma_{2n} = Gamma_{2n+1}", *g, *h);
      if (h && x) cmp(*h < *x, "Gamma_{2n+1} < Xi_{2n+1}", *h, *x);
    }
  }

  for (const auto& cv : curves) {
    if (cv.samples.empty() || std::abs(cv.samples.front().e) > 1e-12) continue;
    for (int k : cv.ordinals) {
      const double expect = cv.omega_sign > 0 ? beta_hat(std::floor(k / 2.0)) : beta_hat(std::ceil(k / 2.0) - 0.5);
      if (std::abs(cv.samples.front().beta - expect) > start_tol) {
        rep.starts_ok = false;
        std::snprintf(buf, sizeof buf, "%s starts at %.15g, expected %.15g", cv.label.c_str(),
                      cv.samples.front().beta, expect);
        fail(buf);
      }
    }
  }

  if (const DegenerateCurve* g1 = holding(curves, 1, 1)) {
    for (const auto& s : g1->samples)
      if (std::abs(s.beta) > 1e-8) {
        rep.gamma1_vertical = false;
        std::snprintf(buf, sizeof buf, "Gamma1 leaves bt = 0 at e = %.15g (%.15g)", s.e, s.beta);
        fail(buf);
      }
  } else {
    rep.gamma1_vertical = false;
    fail("Gamma1 not traced");
  }
  if (const DegenerateCurve* x1 = holding(curves, -1, 1)) {
    for (std::size_t j = 1; j < x1->samples.size(); ++j) {
      const auto& A = x1->samples[j - 1];
      const auto& B = x1->samples[j];
      if (A.beta > 0.0 && B.beta <= 0.0) {
        rep.xi1_crosses_gamma1 = true;
        rep.crossing_e = A.e + (B.e - A.e) * A.beta / (A.beta - B.beta);
        break;
      }
    }
  }
  if (!rep.xi1_crosses_gamma1) fail("Xi1 does not cross Gamma1 on the traced grid");
  return rep;
}

OrderingReport verify_convex_ordering(const std::vector<DegenerateCurve>& curves, const ConvexBoundaries& b,
                                      double start_tol) {
  OrderingReport rep;
  rep.gamma1_vertical = false;
  char buf[200];
  auto fail = [&](const std::string& s) {
    rep.ok = false;
    rep.violations.push_back(s);
  };
  const DegenerateCurve* gl = holding(curves, -1, 1);
  const DegenerateCurve* gm = holding(curves, -1, 2);
  if (!gl || !gm) fail("Gamma_l or Gamma_m not traced");
  for (std::size_t i = 0; i < b.e.size(); ++i) {
    const double e = b.e[i];
    rep.comparisons += 2;
    if (!(b.beta_l[i] <= b.beta_m[i] + 1e-9 && b.beta_m[i] <= b.beta_r[i] + 1e-9)) {
      std::snprintf(buf, sizeof buf, "e=%.15g: l <= m <= r violated (%.15g, %.15g, %.15g)", e, b.beta_l[i],
                    b.beta_m[i], b.beta_r[i]);
      fail(buf);
    }
    const auto l = at(gl, e), m = at(gm, e);
    for (auto [v, ref, name] : {std::tuple{l, b.beta_l[i], "Gamma_l"}, std::tuple{m, b.beta_m[i], "Gamma_m"}}) {
      if (!v) continue;
      ++rep.comparisons;
      if (std::abs(*v - ref) > 1e-6) {
        std::snprintf(buf, sizeof buf, "e=%.15g: traced %s %.15g differs from boundary %.15g", e, name, *v, ref);
        fail(buf);
      }
    }
    if (std::abs(e) <= 1e-12) {
      if (std::abs(b.beta_l[i] - beta_star()) > start_tol || std::abs(b.beta_m[i] - beta_star()) > start_tol ||
          std::abs(b.beta_r[i] - beta_star_star()) > start_tol) {
        rep.starts_ok = false;
        std::snprintf(buf, sizeof buf, "e = 0 starts (%.15g, %.15g, %.15g) differ from (beta*, beta*, beta**)",
                      b.beta_l[i], b.beta_m[i], b.beta_r[i]);
        fail(buf);
      }
    }
  }
  if (b.e.empty() || std::abs(b.e.front()) > 1e-12) {
    rep.starts_ok = false;
    fail("boundary grid does not start at e = 0");
  }
  return rep;
}

TangentQuadrature tangent_quadrature(Case c, double start, int parity) {
  const EssentialSystem s = system_at(c, start, 0.0);
  double d3 = 0.0, d4 = 0.0;
  if (c == Case::nonconvex) {
    d3 = 1.5;
    d4 = -1.0;
  } else {
    const double r = std::sqrt(9.0 - start);
    if (c == Case::convex) {
      d3 = 3.0 / (4.0 * r);
      d4 = -1.0 / (2.0 * r);
    } else {
      d3 = -1.0 / (4.0 * r);
      d4 = 1.0 / (4.0 * r);
    }
  }
  const double a0 = s.lambda4 + 0.25;
  std::function<Eigen::Vector2d(double)> u, du;
  if (parity == 1) {
    u = [a0](double t) { return Eigen::Vector2d(a0 * std::sin(t / 2), std::cos(t / 2)); };
    du = [a0](double t) { return Eigen::Vector2d(0.5 * a0 * std::cos(t / 2), -0.5 * std::sin(t / 2)); };
  } else {
    u = [a0](double t) { return Eigen::Vector2d(a0 * std::cos(t / 2), -std::sin(t / 2)); };
    du = [a0](double t) { return Eigen::Vector2d(-0.5 * a0 * std::sin(t / 2), -0.5 * std::cos(t / 2)); };
  }
  const PlaneCurve x0 = from_comoving(u, du);
  TangentQuadrature q;
  q.d_param = potential_form(d3, d4, [](double) { return 1.0; }, x0);
  q.d_e = potential_form(s.lambda3, s.lambda4, [](double t) { return -std::cos(t); }, x0);
  q.slope = -q.d_e / q.d_param;
  q.kernel_form = quadratic_form(s.lambda3, s.lambda4, 0.0, x0);
  return q;
}

namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

}  // namespace

void write_curves_csv(std::ostream& os, const std::vector<DegenerateCurve>& curves) {
  os << "case,omega,label,e,beta,nu,bracket\n";
  for (const auto& cv : curves)
    for (const auto& s : cv.samples)
      os << to_string(cv.c) << ',' << cv.omega_sign << ',' << cv.label << ',' << num(s.e) << ',' << num(s.beta) << ','
         << s.nu << ',' << num(s.bracket) << '\n';
}

void write_boundaries_csv(std::ostream& os, const ConvexBoundaries& b, bool header) {
  if (header) os << "case,omega,label,e,beta,nu,bracket\n";
  auto rows = [&](const char* omega, const char* label, const std::vector<double>& v, bool r) {
    for (std::size_t i = 0; i < b.e.size(); ++i)
      os << "convex," << omega << ',' << label << ',' << num(b.e[i]) << ',' << num(v[i]) << ','
         << (r ? 0 : (std::abs(b.beta_l[i] - b.beta_m[i]) <= 1e-7 ? 2 : 1)) << ','
         << num(r ? b.bracket_r[i] : 0.0) << '\n';
  };
  rows("-1", "Gamma_l", b.beta_l, false);
  rows("-1", "Gamma_m", b.beta_m, false);
  rows("hyp", "Gamma_r", b.beta_r, true);
}

}  // namespace ere
