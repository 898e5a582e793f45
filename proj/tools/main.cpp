#include "commands.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <exception>
#include <iostream>
#include <string>

int main(int argc, char** argv) {
  using namespace ere::cli;
  CLI::App app{"Linear stability of elliptic relative equilibria with two small masses"};
  app.set_config("--config", "", "key=value file mirroring the flags (flags win)");
  app.require_subcommand(1);

  AnalyzeArgs an;
  double beta = 0.0, beta_tilde = 0.0, l3 = 0.0, l4 = 0.0;
  std::string omega;
  auto* sa = app.add_subcommand("analyze", "Monodromy, normal form and indices at one point");
  sa->add_option("--case", an.case_name, "nonconvex | convex | lagrange | custom")->required();
  auto* ob = sa->add_option("--beta", beta, "mass parameter beta");
  auto* obt = sa->add_option("--beta-tilde", beta_tilde, "non-convex substitute sqrt(9 - beta), in (-1, 3]");
  auto* o3 = sa->add_option("--l3", l3, "custom lambda3");
  auto* o4 = sa->add_option("--l4", l4, "custom lambda4");
  sa->add_option("--ecc", an.ecc, "eccentricity in [0, 0.99]")->required();
  auto* ow = sa->add_option("--omega", omega, "extra unit-circle point re[,im] for i_omega");
  sa->add_option("--N", an.N, "Hill truncation (0: 64 up to e = 0.8, else 128)");
  sa->add_option("--defect-tol", an.defect_tol, "relative symplectic defect tolerance");

  FigureArgs fig;
  auto* sf = app.add_subcommand("figure", "Trace the degenerate curves of figure 1 (non-convex) or 2 (convex)");
  sf->add_option("which", fig.which, "1 or 2")->required();
  sf->add_option("--out", fig.out, "CSV path")->required();
  sf->add_option("--svg", fig.svg, "optional SVG path");
  sf->add_option("--e-max", fig.e_max, "largest eccentricity of the grid");
  sf->add_option("--e-step", fig.e_step, "grid step in e");
  sf->add_flag("!--no-refine", fig.refine, "keep the uniform grid");
  sf->add_option("--threads", fig.threads, "worker count (0: ERE_STABILITY_THREADS or hardware)");

  CcLimitArgs cl;
  std::string branch = "convex";
  auto* sc = app.add_subcommand("cc-limit", "Newton central configurations along an eps ladder vs. the limit");
  sc->add_option("--m", cl.m, "primary mass m in (0, 1)")->required();
  sc->add_option("--tau", cl.tau, "mass ratio tau in (0, 1]")->required();
  sc->add_option("--branch", cl.branch, "convex | nonconvex")->required();
  sc->add_option("--eps-ladder", cl.eps, "decreasing eps values")->delimiter(',')->expected(1, -1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    Result r;
    if (*sa) {
      if (*ob) an.beta = beta;
      if (*obt) an.beta_tilde = beta_tilde;
      if (*o3) an.l3 = l3;
      if (*o4) an.l4 = l4;
      if (*ow) an.omega = omega;
      r = run_analyze(an);
    } else if (*sf) {
      r = run_figure(fig);
    } else {
      r = run_cc_limit(cl);
    }
    std::cout << r.json << '\n';
    return r.exit_code;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
