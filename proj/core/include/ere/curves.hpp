#pragma once

#include "ere/hill.hpp"
#include "ere/index.hpp"
#include "ere/systems.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace ere {

// e = 0 degenerate points of the non-convex family: bh(n) for omega = 1 (integer n)
// and omega = -1 (half-integer n).
double beta_hat(double n);
double beta_star();        // (1331 - 35 sqrt 1297) / 288, convex -1 double root at e = 0
double beta_star_star();   // 16 (182 - 37 sqrt 21) / 625, convex hyperbolic onset at e = 0
double xi_slope();         // (41 + 5 sqrt 1297) / (48 sqrt 1297)
double convex_slope();     // (2525 + 67 sqrt 1297) / (288 sqrt 1297)

// Member of a tagged family at curve coordinate p (non-convex: bt, otherwise beta).
EssentialSystem system_at(Case c, double p, double e);
// +1 if i_omega is non-decreasing in the curve coordinate, -1 if non-increasing, 0 if unknown.
int index_direction(Case c);

struct FindOptions {
  int N = 0;                 // parity truncation; 0 picks 64 up to e = 0.8 and 128 beyond
  double scan_step = 0.01;
  double xtol = 1e-10;
  double merge_tol = 1e-7;   // roots of the two parities closer than this form one point
  bool certify = true;
  MorseOptions hill{0, true, 1e-9};  // N = 0 follows the parity truncation
  double nu_rel_tol = 1e-7;

  int truncation(double e) const;
};

struct DegeneratePoint {
  double beta = 0.0;     // curve coordinate
  double bracket = 0.0;  // width of the final bracket (or root spread when merged)
  int multiplicity = 1;
  int parities = 0;      // bit p set if parity p has a root here
  int ordinal = 0;       // 1-based position of the first root, counted with multiplicity
  int nu_monodromy = -1;
  int nu_hill = -1;
  int index_below = -1;  // Hill i_omega on either side
  int index_above = -1;
  bool hill_stabilized = false;
  bool certified = false;
};

struct DegenerateSlice {
  Case c = Case::custom;
  int omega_sign = 1;
  double e = 0.0;
  double lo = 0.0, hi = 0.0;
  std::vector<DegeneratePoint> points;  // ascending
  std::vector<int> interval_index;      // Hill i_omega on the gaps, size points + 1
  bool all_certified = true;
};

// All omega-degenerate points (omega = +-1) in [lo, hi] at fixed e: sign changes of the
// parity determinants refined by bisection, then certified by dim ker(gamma(2pi) - omega),
// the Hill kernel and the jump of the Hill index.
DegenerateSlice find_degenerate(Case c, int omega_sign, double e, double lo, double hi,
                                const FindOptions& opt = {});

// Generic omega on the circle: jumps of the Hill index along a scan, bisected to xtol.
struct GenericRoot {
  double beta = 0.0;
  double bracket = 0.0;
  int jump = 0;           // index change across the root
  int nu_monodromy = -1;
  double sigma_min = 0.0;  // smallest singular value of gamma(2pi) - omega
};
std::vector<GenericRoot> find_degenerate_generic(Case c, cplx omega, double e, double lo, double hi,
                                                 int scan_points = 60, double xtol = 1e-9, int N = 64);

struct CurveSample {
  double e = 0.0;
  double beta = 0.0;
  double bracket = 0.0;
  int nu = 0;
  bool certified = false;
};

struct DegenerateCurve {
  Case c = Case::custom;
  int omega_sign = 1;
  std::string label;          // e.g. "Xi1", "Gamma2=Gamma3", "Gamma_l"
  std::vector<int> ordinals;  // root positions covered (two when merged)
  int multiplicity = 1;
  double start_beta = 0.0;    // value at the first sample
  std::vector<CurveSample> samples;  // increasing e
  std::string truncated;      // non-empty if the curve left the window
  bool continuous = true;     // no jump above 10x the local secant prediction
};

std::string curve_label(Case c, int omega_sign, int ordinal);

// Default e grid 0, 0.05, ..., 0.95.
std::vector<double> default_e_grid(double e_max = 0.95, double step = 0.05);

struct TraceOptions {
  FindOptions find{};
  bool refine = true;         // halve e steps where a curve bends sharply
  double min_step = 0.0125;
  double bend_tol = 0.02;     // second difference triggering refinement
  int threads = 0;
};

// Traces all omega-degenerate curves crossing [lo, hi] over the e grid, one independent
// slice per e. Consecutive ordinals that coincide at every sample are merged.
std::vector<DegenerateCurve> trace_curves(Case c, int omega_sign, double lo, double hi,
                                          std::vector<double> e_grid, const TraceOptions& opt = {});
// The single curve holding `ordinal`.
DegenerateCurve trace_curve(Case c, int omega_sign, int ordinal, double lo, double hi,
                            const std::vector<double>& e_grid, const TraceOptions& opt = {});

struct ConvexBoundaries {
  std::vector<double> e;
  std::vector<double> beta_l, beta_m, beta_r;
  std::vector<double> bracket_r;
  std::vector<bool> certified;  // -1 points certified and the onset bracket resolved
};

struct BoundaryOptions {
  FindOptions find{};
  double xtol = 1e-10;
  bool paranoid = false;  // rescan [0, 27/4] and throw if the hyperbolic set is not an interval
  double paranoid_step = 0.01;
  int threads = 0;
};

// Smallest beta from which every monodromy is hyperbolic, by bisection on [lo, 27/4].
double hyperbolic_onset(double e, double lo, double xtol, double* bracket = nullptr);
ConvexBoundaries convex_boundaries(const std::vector<double>& e_grid, const BoundaryOptions& opt = {});

// Regions I..IV of the convex rectangle; 0 when on a boundary within tol.
int convex_region(double beta, double bl, double bm, double br, double tol = 1e-6);

struct RegionCell {
  double beta = 0.0;
  double e = 0.0;
  int region = 0;  // convex only
  std::string tag;
  std::string detail;
  Verdict verdict = Verdict::boundary;
  double unit_margin = 0.0;
  std::vector<double> angles;
  bool max_modulus_above_one = false;  // some |lambda| >= 1 + 1e-6
  double max_modulus = 0.0;
};

struct RegionMap {
  Case c = Case::custom;
  std::vector<RegionCell> cells;
};

// Normal form and verdict per (beta, e) cell. Convex cells also get their region from
// boundaries computed at each e of the grid.
RegionMap region_classify(Case c, const std::vector<double>& params, const std::vector<double>& e_grid,
                          int threads = 0);

// Whether a tag is the one expected for a convex region: R(th1)R(th2) with both angles in
// (pi, 2pi) for I, R(th)D(-2) with th in (pi, 2pi) for II, one angle in each half for III,
// hyperbolic for IV.
bool region_tag_matches(int region, const RegionCell& cell);

struct OrderingReport {
  bool ok = true;
  std::vector<std::string> violations;
  int comparisons = 0;
  bool starts_ok = true;
  bool gamma1_vertical = true;
  bool xi1_crosses_gamma1 = false;
  double crossing_e = -1.0;  // linear interpolation between the bracketing samples
};

// Non-convex chain Xi_{2n-1} <= Xi_{2n} < Gamma_{2n} = Gamma_{2n+1} < Xi_{2n+1} at every
// shared e sample, e = 0 start points against beta_hat, Gamma1 = 0 and the Xi1 x Gamma1 crossing.
OrderingReport verify_ordering(const std::vector<DegenerateCurve>& curves, double start_tol = 1e-6);

// Convex counterpart: Gamma_l <= Gamma_m <= Gamma_r at every e of the boundary grid,
// Gamma_l(0) = Gamma_m(0) = beta*, Gamma_r(0) = beta**, and traced -1 curves agreeing
// with the boundary bisection where both exist.
OrderingReport verify_convex_ordering(const std::vector<DegenerateCurve>& curves, const ConvexBoundaries& b,
                                      double start_tol = 1e-6);

// Sample value of the curve holding `label` at e (exact grid match), if any.
std::optional<double> curve_value(const std::vector<DegenerateCurve>& curves, const std::string& label, double e);

// Tangent of a -1 curve at its e = 0 start from the kernel element
// u = (a0 sin(t/2), cos(t/2)) (parity 1) or (a0 cos(t/2), -sin(t/2)) (parity 0), a0 = l4 + 1/4.
struct TangentQuadrature {
  double d_param = 0.0;  // <dA/dparam x0, x0>
  double d_e = 0.0;      // <dA/de x0, x0>
  double slope = 0.0;    // -d_e / d_param
  double kernel_form = 0.0;  // <A x0, x0>, zero at the degenerate point
};
TangentQuadrature tangent_quadrature(Case c, double start, int parity);

// CSV with header case,omega,label,e,beta,nu,bracket; 15 significant digits.
void write_curves_csv(std::ostream& os, const std::vector<DegenerateCurve>& curves);
// Convex boundary curves Gamma_l, Gamma_m (omega column "-1") and Gamma_r ("hyp").
void write_boundaries_csv(std::ostream& os, const ConvexBoundaries& b, bool header);

}  // namespace ere
