#pragma once

#include "ere/numerics.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ere::cli {

// Out-of-range or inconsistent arguments; the tool exits with status 2.
struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct Result {
  int exit_code = 0;  // 0 only when every requested computation stabilized
  std::string json;   // report printed on stdout
};

struct AnalyzeArgs {
  std::string case_name = "nonconvex";
  std::optional<double> beta;
  std::optional<double> beta_tilde;  // non-convex substitute, alternative to beta
  std::optional<double> l3, l4;      // custom case
  double ecc = 0.0;
  std::optional<std::string> omega;  // "re[,im]", normalized to the unit circle
  int N = 0;                         // Hill truncation; 0 picks 64 up to e = 0.8, else 128
  double defect_tol = 1e-8;
};

struct FigureArgs {
  int which = 1;
  std::string out;
  std::string svg;  // empty: no SVG
  double e_max = 0.95;
  double e_step = 0.05;
  bool refine = true;
  int threads = 0;
};

struct CcLimitArgs {
  double m = 0.5;
  double tau = 1.0;
  std::string branch = "convex";
  std::vector<double> eps{1e-3, 1e-4, 1e-5};
};

cplx parse_omega(const std::string& text);

Result run_analyze(const AnalyzeArgs& a);
Result run_figure(const FigureArgs& a);
Result run_cc_limit(const CcLimitArgs& a);

}  // namespace ere::cli
