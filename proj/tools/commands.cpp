#include "commands.hpp"

#include "ere/curves.hpp"
#include "ere/hill.hpp"
#include "ere/index.hpp"
#include "ere/io.hpp"
#include "ere/smallmass.hpp"
#include "ere/systems.hpp"
#include "svg.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace ere::cli {

using nlohmann::json;

namespace {

json num(double x) { return round15(x); }
json pair(cplx z) { return json::array({round15(z.real()), round15(z.imag())}); }

void require(bool ok, const std::string& msg) {
  if (!ok) throw UsageError(msg);
}

json index_json(const OmegaIndex& oi) {
  return {{"i", oi.i_omega},
          {"nu", oi.nu_omega},
          {"N", oi.truncation_N},
          {"stabilized", oi.stabilized},
          {"i_at_2N", oi.i_at_2N},
          {"nu_at_2N", oi.nu_at_2N},
          {"min_abs_eig", num(oi.min_abs_eig)}};
}

std::string omega_key(cplx w) {
  if (std::abs(w - 1.0) < 1e-14) return "1";
  if (std::abs(w + 1.0) < 1e-14) return "-1";
  return "omega";
}

}  // namespace

cplx parse_omega(const std::string& text) {
  std::string s = text;
  std::replace(s.begin(), s.end(), ',', ' ');
  std::istringstream is(s);
  double re = 0.0, im = 0.0;
  if (!(is >> re)) throw UsageError("omega: expected re[,im], got '" + text + "'");
  if (!(is >> im)) im = 0.0;
  std::string rest;
  if (is >> rest) throw UsageError("omega: trailing input in '" + text + "'");
  const cplx w(re, im);
  if (!(std::abs(w) > 0.0) || !std::isfinite(std::abs(w))) throw UsageError("omega must be non-zero and finite");
  return w / std::abs(w);
}

Result run_analyze(const AnalyzeArgs& a) {
  Case c;
  try {
    c = case_from_string(a.case_name);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  require(a.ecc >= 0.0 && a.ecc <= 0.99, "--ecc must lie in [0, 0.99]");
  require(a.N >= 0 && a.N <= 512, "--N must lie in [0, 512]");

  EssentialSystem sys;
  json input = {{"case", to_string(c)}, {"e", num(a.ecc)}};
  switch (c) {
    case Case::nonconvex:
      require(a.beta.has_value() != a.beta_tilde.has_value(), "non-convex case needs exactly one of --beta, --beta-tilde");
      if (a.beta) {
        require(*a.beta >= 0.0 && *a.beta <= 6.75, "--beta must lie in [0, 27/4]");
        sys = EssentialSystem::nonconvex(*a.beta, a.ecc);
        input["beta"] = num(*a.beta);
      } else {
        require(*a.beta_tilde > -1.0 && *a.beta_tilde <= 3.0, "--beta-tilde must lie in (-1, 3]");
        sys = EssentialSystem::nonconvex_tilde(*a.beta_tilde, a.ecc);
      }
      input["beta_tilde"] = num(sys.param);
      break;
    case Case::convex:
    case Case::lagrange:
      require(a.beta.has_value() && !a.beta_tilde, "--beta is required (and --beta-tilde is non-convex only)");
      require(*a.beta >= 0.0 && *a.beta <= (c == Case::convex ? 6.75 : 9.0),
              c == Case::convex ? "--beta must lie in [0, 27/4]" : "--beta must lie in [0, 9]");
      sys = c == Case::convex ? EssentialSystem::convex(*a.beta, a.ecc) : EssentialSystem::lagrange(*a.beta, a.ecc);
      input["beta"] = num(*a.beta);
      break;
    case Case::custom:
      require(a.l3 && a.l4, "custom case needs --l3 and --l4");
      require(std::isfinite(*a.l3) && std::isfinite(*a.l4), "--l3, --l4 must be finite");
      sys = EssentialSystem::custom(*a.l3, *a.l4, a.ecc);
      break;
  }
  input["lambda3"] = num(sys.lambda3);
  input["lambda4"] = num(sys.lambda4);

  const Monodromy M = integrate_monodromy(sys);
  const NormalForm nf = classify_normal_form(M.gamma2pi.m);
  std::vector<cplx> mult(nf.spectrum.values.begin(), nf.spectrum.values.end());
  std::sort(mult.begin(), mult.end(), [](cplx x, cplx y) {
    if (std::abs(std::abs(x) - std::abs(y)) > 1e-12) return std::abs(x) > std::abs(y);
    return std::arg(x) < std::arg(y);
  });

  FindOptions fo;
  MorseOptions mo{a.N > 0 ? a.N : fo.truncation(a.ecc), true, 1e-9};
  std::vector<cplx> omegas{1.0, -1.0};
  if (a.omega) {
    const cplx w = parse_omega(*a.omega);
    if (std::abs(w - 1.0) > 1e-14 && std::abs(w + 1.0) > 1e-14) omegas.push_back(w);
  }

  json j;
  j["schema"] = kSchemaVersion;
  j["kind"] = "analysis";
  j["input"] = input;
  j["multipliers"] = json::array();
  j["moduli"] = json::array();
  for (cplx z : mult) {
    j["multipliers"].push_back(pair(z));
    j["moduli"].push_back(num(std::abs(z)));
  }
  j["verdict"] = to_string(nf.verdict);
  j["normal_form"] = {{"tag", nf.tag},
                      {"detail", nf.detail},
                      {"n2_suspect", nf.n2_suspect},
                      {"unit_margin", std::isfinite(nf.unit_margin) ? json(num(nf.unit_margin)) : json(nullptr)}};
  bool stabilized = true;
  j["index"] = json::object();
  j["nullity_monodromy"] = json::object();
  for (cplx w : omegas) {
    const OmegaIndex oi = morse_index(sys.lambda3, sys.lambda4, sys.e, w, mo);
    json ij = index_json(oi);
    const int nu_m = nu_omega(M.gamma2pi.m, w);
    const std::string key = omega_key(w);
    if (key == "omega") ij["value"] = pair(w);
    j["index"][key] = ij;
    j["nullity_monodromy"][key] = nu_m;
    stabilized = stabilized && oi.stabilized && oi.nu_omega == nu_m;
  }
  j["symplectic_defect"] = num(M.defect);
  j["symplectic_defect_abs"] = num(M.gamma2pi.defect_abs);
  j["integration_steps"] = M.steps;
  stabilized = stabilized && M.defect <= a.defect_tol;
  j["stabilized"] = stabilized;
  return {stabilized ? 0 : 1, j.dump(2)};
}

namespace {

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};

json curve_summary(const DegenerateCurve& cv) {
  bool all = true;
  for (const auto& s : cv.samples) all = all && s.certified;
  return {{"label", cv.label},
          {"omega", cv.omega_sign},
          {"multiplicity", cv.multiplicity},
          {"samples", cv.samples.size()},
          {"start", num(cv.samples.empty() ? 0.0 : cv.samples.front().beta)},
          {"start_e", num(cv.samples.empty() ? 0.0 : cv.samples.front().e)},
          {"certified", all},
          {"continuous", cv.continuous},
          {"truncated", cv.truncated}};
}

json ordering_json(const OrderingReport& r) {
  json j = {{"ok", r.ok}, {"comparisons", r.comparisons}, {"starts_ok", r.starts_ok}};
  j["violations"] = r.violations;
  return j;
}

void write_file(const std::string& path, const std::string& body) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path + " for writing");
  f << body;
  if (!f) throw std::runtime_error("write failed: " + path);
}

}  // namespace

Result run_figure(const FigureArgs& a) {
  require(a.which == 1 || a.which == 2, "figure must be 1 or 2");
  require(!a.out.empty(), "--out is required");
  require(a.e_max > 0.0 && a.e_max <= 0.99, "--e-max must lie in (0, 0.99]");
  require(a.e_step > 0.0 && a.e_step <= a.e_max, "--e-step must lie in (0, e-max]");
  require(a.threads >= 0, "--threads must be >= 0");
  TraceOptions to;
  to.refine = a.refine;
  to.threads = a.threads;
  const std::vector<double> grid = default_e_grid(a.e_max, a.e_step);

  json j;
  j["schema"] = kSchemaVersion;
  j["kind"] = "figure";
  j["figure"] = a.which;
  j["csv"] = a.out;
  std::ostringstream csv;
  std::vector<Series> series;
  Axes ax;
  bool ok = true;

  if (a.which == 1) {
    auto curves = trace_curves(Case::nonconvex, 1, -1.0, 3.0, grid, to);
    auto minus = trace_curves(Case::nonconvex, -1, -1.0, 3.0, grid, to);
    curves.insert(curves.end(), minus.begin(), minus.end());
    write_curves_csv(csv, curves);
    const OrderingReport r = verify_ordering(curves);
    j["curves"] = json::array();
    for (const auto& cv : curves) {
      j["curves"].push_back(curve_summary(cv));
      ok = ok && j["curves"].back()["certified"].get<bool>();
    }
    j["ordering"] = ordering_json(r);
    j["ordering"]["gamma1_vertical"] = r.gamma1_vertical;
    j["ordering"]["xi1_crosses_gamma1"] = r.xi1_crosses_gamma1;
    j["ordering"]["crossing_e"] = num(r.crossing_e);
    ok = ok && r.ok;
    ax = {-1.0, 3.0, 0.0, 1.0, "beta~ = sqrt(9 - beta)", "e", "non-convex: omega = 1 (solid), omega = -1 (dashed)"};
    int k = 0;
    for (const auto& cv : curves) {
      Series s{cv.label, {}, kPalette[k++ % 8], cv.omega_sign < 0};
      for (const auto& p : cv.samples) s.points.emplace_back(p.beta, p.e);
      series.push_back(std::move(s));
    }
  } else {
    BoundaryOptions bo;
    bo.threads = a.threads;
    const ConvexBoundaries b = convex_boundaries(grid, bo);
    const auto traced = trace_curves(Case::convex, -1, 0.0, 6.75, grid, to);
    write_boundaries_csv(csv, b, true);
    const OrderingReport r = verify_convex_ordering(traced, b);
    j["curves"] = json::array();
    for (const auto& cv : traced) {
      j["curves"].push_back(curve_summary(cv));
      ok = ok && j["curves"].back()["certified"].get<bool>();
    }
    json bj = json::array();
    for (std::size_t i = 0; i < b.e.size(); ++i) {
      bj.push_back({{"e", num(b.e[i])},
                    {"beta_l", num(b.beta_l[i])},
                    {"beta_m", num(b.beta_m[i])},
                    {"beta_r", num(b.beta_r[i])},
                    {"region_III_empty", b.beta_r[i] - b.beta_m[i] <= 1e-7},
                    {"certified", static_cast<bool>(b.certified[i])}});
      ok = ok && b.certified[i];
    }
    j["boundaries"] = bj;
    j["ordering"] = ordering_json(r);
    ok = ok && r.ok;
    ax = {0.0, 6.75, 0.0, 1.0, "beta", "e", "convex: Gamma_l, Gamma_m (omega = -1), Gamma_r (hyperbolic onset)"};
    const std::vector<std::pair<std::string, const std::vector<double>*>> rows{
        {"Gamma_l", &b.beta_l}, {"Gamma_m", &b.beta_m}, {"Gamma_r", &b.beta_r}};
    int k = 0;
    for (const auto& [label, v] : rows) {
      Series s{label, {}, kPalette[k++], label == "Gamma_r"};
      for (std::size_t i = 0; i < b.e.size(); ++i) s.points.emplace_back((*v)[i], b.e[i]);
      series.push_back(std::move(s));
    }
  }

  write_file(a.out, csv.str());
  if (!a.svg.empty()) {
    std::ostringstream svg;
    write_svg(svg, ax, series);
    write_file(a.svg, svg.str());
    j["svg"] = a.svg;
  }
  j["stabilized"] = ok;
  return {ok ? 0 : 1, j.dump(2)};
}

Result run_cc_limit(const CcLimitArgs& a) {
  Branch br;
  try {
    br = branch_from_string(a.branch);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  require(!a.eps.empty(), "--eps-ladder needs at least one value");
  for (double e : a.eps) require(e > 0.0 && e <= 1e-2, "--eps-ladder values must lie in (0, 1e-2]");
  for (std::size_t i = 1; i < a.eps.size(); ++i) require(a.eps[i] < a.eps[i - 1], "--eps-ladder must decrease");
  SmallMassFamily fam{a.m, a.tau, a.eps.front(), br};
  try {
    fam.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }

  json j;
  j["schema"] = kSchemaVersion;
  j["kind"] = "cc_limit";
  j["family"] = {{"m", num(a.m)}, {"tau", num(a.tau)}, {"branch", to_string(br)}};
  LadderReport rep;
  try {
    rep = limit_ladder(a.m, a.tau, br, a.eps);
  } catch (const NewtonError& e) {
    j["error"] = {{"kind", "newton"}, {"message", e.what()}};
    return {1, j.dump(2)};
  } catch (const ConfigurationError& e) {
    j["error"] = {{"kind", "configuration"}, {"message", e.what()}};
    return {1, j.dump(2)};
  }
  const LimitData& L = rep.limit;
  j["limit"] = {{"alpha0", num(L.alpha0)},   {"mu0", num(L.mu0)},         {"beta", num(L.beta)},
                {"lambda1", num(L.lambda1)}, {"lambda2", num(L.lambda2)}, {"lambda3", num(L.lambda3)},
                {"lambda4", num(L.lambda4)}, {"beta2_0", num(L.beta2_0)}, {"beta11_0", pair(L.beta11_0)},
                {"beta12_0", pair(L.beta12_0)}, {"beta22_0", pair(L.beta22_0)}, {"theta34", num(L.theta34)}};
  const HessianEigen he = hessian_eigen(a.m);
  j["hessian"] = {{"eigenvalues", {num(he.delta1), num(he.delta2)}},
                  {"closed_form", {num(L.hessian_eigs[0]), num(L.hessian_eigs[1])}},
                  {"block", {num(L.hessian_eigs[0]), num(L.hessian_eigs[1]), num(L.hessian_eigs[2]),
                             num(L.hessian_eigs[3])}}};
  j["rows"] = json::array();
  for (const LadderRow& r : rep.rows) {
    j["rows"].push_back({{"eps", num(r.eps)},
                         {"beta2", num(r.params.beta2)},
                         {"beta11", pair(r.params.beta11)},
                         {"beta12", pair(r.params.beta12)},
                         {"beta22", pair(r.params.beta22)},
                         {"err_beta2", num(r.err_beta2)},
                         {"abs_beta12", num(r.abs_beta12)},
                         {"err_beta11", num(r.err_beta11)},
                         {"err_beta22", num(r.err_beta22)},
                         {"cc_residual", num(r.cc.residual)},
                         {"unitarity_defect", num(r.unitarity)},
                         {"newton_iterations", r.cc.iterations},
                         {"theta34", num(r.cc.theta34)}});
  }
  j["errors_monotone"] = rep.errors_monotone;
  j["stabilized"] = true;
  return {0, j.dump(2)};
}

}  // namespace ere::cli
