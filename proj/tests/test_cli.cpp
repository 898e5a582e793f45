#include <doctest.h>

#include "commands.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

using namespace ere;
using namespace ere::cli;
using nlohmann::json;

TEST_SUITE("cli") {
  TEST_CASE("analyze: non-convex beta = 27/4 is unstable with the e^{2 pi sqrt(a1)} pair") {
    AnalyzeArgs a;
    a.case_name = "nonconvex";
    a.beta = 6.75;
    a.ecc = 0.0;
    const Result r = run_analyze(a);
    CHECK(r.exit_code == 0);
    const json j = json::parse(r.json);
    CHECK(j["verdict"] == "unstable");
    // bt = 1.5: x^2 = (1.25 + sqrt(1.25^2 + 40.5)) / 2 for the real root pair
    const double a1 = (1.25 + std::sqrt(1.5625 + 40.5)) / 2.0;
    const double big = std::exp(kTwoPi * std::sqrt(a1));
    CHECK(j["multipliers"][0][0].get<double>() == doctest::Approx(big).epsilon(1e-8));
    CHECK(j["multipliers"][3][0].get<double>() == doctest::Approx(1.0 / big).epsilon(1e-6));
    CHECK(j["schema"] == 1);
  }

  TEST_CASE("analyze: convex beta = 0.1 is strongly stable") {
    AnalyzeArgs a;
    a.case_name = "convex";
    a.beta = 0.1;
    const json j = json::parse(run_analyze(a).json);
    CHECK(j["verdict"] == "strongly-stable");
    for (const auto& m : j["moduli"]) CHECK(m.get<double>() == doctest::Approx(1.0).epsilon(1e-7));
    CHECK(j["index"]["-1"]["i"] == 2);
  }

  TEST_CASE("analyze: convex beta = 6 at e = 0.3 is hyperbolic") {
    AnalyzeArgs a;
    a.case_name = "convex";
    a.beta = 6.0;
    a.ecc = 0.3;
    CHECK(json::parse(run_analyze(a).json)["verdict"] == "hyperbolic");
  }

  TEST_CASE("analyze: extra omega") {
    AnalyzeArgs a;
    a.case_name = "convex";
    a.beta = 0.1;
    a.omega = "0,1";
    const json j = json::parse(run_analyze(a).json);
    REQUIRE(j["index"].contains("omega"));
    CHECK(j["index"]["omega"]["value"][1].get<double>() == doctest::Approx(1.0));
  }

  TEST_CASE("usage errors") {
    AnalyzeArgs a;
    a.case_name = "convex";
    a.beta = 7.0;
    CHECK_THROWS_AS(run_analyze(a), UsageError);
    a.beta = 1.0;
    a.ecc = 1.0;
    CHECK_THROWS_AS(run_analyze(a), UsageError);
    a.ecc = 0.0;
    a.case_name = "spherical";
    CHECK_THROWS_AS(run_analyze(a), UsageError);
    a.case_name = "nonconvex";
    a.beta_tilde = 1.0;
    CHECK_THROWS_AS(run_analyze(a), UsageError);  // both beta and beta-tilde
    CHECK_THROWS_AS(parse_omega("0,0"), UsageError);
    CHECK_THROWS_AS(parse_omega("x"), UsageError);
    CHECK(parse_omega("-3") == cplx(-1.0, 0.0));
    FigureArgs f;
    f.which = 3;
    f.out = "x.csv";
    CHECK_THROWS_AS(run_figure(f), UsageError);
    CcLimitArgs c;
    c.eps = {1e-4, 1e-3};
    CHECK_THROWS_AS(run_cc_limit(c), UsageError);
  }

  TEST_CASE("cc-limit: beta2 column approaches lambda2 and the Hessian block matches") {
    CcLimitArgs c;
    c.m = 0.5;
    c.tau = 1.0;
    c.branch = "convex";
    c.eps = {1e-3, 1e-4, 1e-5};
    const Result r = run_cc_limit(c);
    CHECK(r.exit_code == 0);
    const json j = json::parse(r.json);
    CHECK(j["limit"]["beta2_0"].get<double>() == doctest::Approx(0.75));
    double prev = 1.0;
    for (const auto& row : j["rows"]) {
      const double b12 = row["abs_beta12"].get<double>();
      CHECK(b12 < prev);
      prev = b12;
    }
    CHECK(std::abs(j["rows"][2]["beta2"].get<double>() - 0.75) < 1e-3);
    for (int i = 0; i < 2; ++i)
      CHECK(j["hessian"]["eigenvalues"][i].get<double>() ==
            doctest::Approx(j["hessian"]["closed_form"][i].get<double>()).epsilon(1e-12));
  }

  TEST_CASE("figure: coarse grid is deterministic") {
    FigureArgs f;
    f.which = 2;
    f.out = "cli_figure_a.csv";
    f.e_max = 0.2;
    f.e_step = 0.1;
    f.refine = false;
    const Result a = run_figure(f);
    f.out = "cli_figure_b.csv";
    f.svg = "cli_figure_b.svg";
    const Result b = run_figure(f);
    auto slurp = [](const std::string& p) {
      std::ifstream in(p);
      std::stringstream ss;
      ss << in.rdbuf();
      return ss.str();
    };
    CHECK(slurp("cli_figure_a.csv") == slurp("cli_figure_b.csv"));
    CHECK(slurp("cli_figure_b.svg").find("<polyline") != std::string::npos);
    CHECK(a.exit_code == 0);
    const json j = json::parse(a.json);
    CHECK(j["ordering"]["ok"] == true);
    CHECK(j["boundaries"][0]["region_III_empty"] == false);
    for (const char* p : {"cli_figure_a.csv", "cli_figure_b.csv", "cli_figure_b.svg"}) std::remove(p);
  }
}
