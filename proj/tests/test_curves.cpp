#include <doctest.h>

#include "ere/curves.hpp"

#include <cmath>
#include <sstream>

using namespace ere;

TEST_SUITE("curves") {
  TEST_CASE("closed-form degenerate points") {
    CHECK(beta_hat(0) == doctest::Approx(0.0));
    CHECK(beta_hat(1) == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
    CHECK(beta_hat(0.5) == doctest::Approx((-35.0 + std::sqrt(1297.0)) / 24.0).epsilon(1e-14));
    CHECK(beta_star() == doctest::Approx(0.2448402174).epsilon(1e-9));
    CHECK(beta_star_star() == doctest::Approx(0.3185843017).epsilon(1e-9));
    for (double n = 0.5; n < 4; n += 0.5) CHECK(beta_hat(n + 0.5) > beta_hat(n));
  }

  TEST_CASE("labels") {
    CHECK(curve_label(Case::nonconvex, 1, 1) == "Gamma1");
    CHECK(curve_label(Case::nonconvex, -1, 3) == "Xi3");
    CHECK(curve_label(Case::convex, -1, 1) == "Gamma_l");
    CHECK(curve_label(Case::convex, -1, 2) == "Gamma_m");
    CHECK(index_direction(Case::nonconvex) == 1);
    CHECK(index_direction(Case::convex) == -1);
  }

  TEST_CASE("e = 0 slice: located and certified") {
    const DegenerateSlice s = find_degenerate(Case::nonconvex, -1, 0.0, -1.0, 3.0);
    REQUIRE(s.points.size() == 2);
    CHECK(s.points[0].beta == doctest::Approx(beta_hat(0.5)).epsilon(1e-9));
    CHECK(s.points[0].multiplicity == 2);
    CHECK(s.points[1].beta == doctest::Approx(beta_hat(1.5)).epsilon(1e-9));
    CHECK(s.all_certified);
    CHECK(s.interval_index == std::vector<int>{0, 2, 4});
  }

  TEST_CASE("close -1 roots at e = 0.3 certify with nullity one each") {
    const DegenerateSlice s = find_degenerate(Case::nonconvex, -1, 0.3, 1.0, 1.3);
    REQUIRE(s.points.size() == 2);
    CHECK(s.points[1].beta - s.points[0].beta < 2e-3);
    for (const auto& p : s.points) {
      CHECK(p.nu_monodromy == 1);
      CHECK(p.certified);
    }
  }

  TEST_CASE("convex slice at e = 0.3 has two -1 points") {
    const DegenerateSlice s = find_degenerate(Case::convex, -1, 0.3, 0.0, 3.6);
    REQUIRE(s.points.size() == 2);
    CHECK(s.points[0].index_below == 2);
    CHECK(s.points[0].index_above == 1);
    CHECK(s.points[1].index_above == 0);
  }

  TEST_CASE("tangent quadratures reproduce the closed-form slopes") {
    const auto nc = tangent_quadrature(Case::nonconvex, beta_hat(0.5), 1);
    CHECK(std::abs(nc.kernel_form) < 1e-10);
    CHECK(std::abs(nc.slope) == doctest::Approx(xi_slope()).epsilon(1e-9));
    const auto cv = tangent_quadrature(Case::convex, beta_star(), 1);
    CHECK(std::abs(cv.slope) == doctest::Approx(convex_slope()).epsilon(1e-9));
    const auto cv0 = tangent_quadrature(Case::convex, beta_star(), 0);
    CHECK(cv0.slope == doctest::Approx(-cv.slope));
  }

  TEST_CASE("region lookup") {
    CHECK(convex_region(0.1, 0.2, 0.3, 0.4) == 1);
    CHECK(convex_region(0.25, 0.2, 0.3, 0.4) == 2);
    CHECK(convex_region(0.35, 0.2, 0.3, 0.4) == 3);
    CHECK(convex_region(0.5, 0.2, 0.3, 0.4) == 4);
    CHECK(convex_region(0.3, 0.2, 0.3, 0.4) == 0);
  }

  TEST_CASE("CSV layout") {
    DegenerateCurve c;
    c.c = Case::nonconvex;
    c.omega_sign = -1;
    c.label = "Xi1";
    c.samples = {{0.0, 1.0 / 3.0, 1e-11, 2, true}};
    std::ostringstream os;
    write_curves_csv(os, {c});
    CHECK(os.str() == "case,omega,label,e,beta,nu,bracket\nnonconvex,-1,Xi1,0,0.333333333333333,2,1e-11\n");
  }

  TEST_CASE("ordering check flags a swapped chain") {
    DegenerateCurve x1, x2, g2;
    x1.c = x2.c = g2.c = Case::nonconvex;
    x1.omega_sign = x2.omega_sign = -1;
    g2.omega_sign = 1;
    x1.ordinals = {1};
    x2.ordinals = {2};
    g2.ordinals = {2, 3};
    x1.samples = {{0.5, 0.2, 0, 1, true}};
    x2.samples = {{0.5, 0.4, 0, 1, true}};
    g2.samples = {{0.5, 0.3, 0, 2, true}};
    const OrderingReport r = verify_ordering({x1, x2, g2});
    CHECK_FALSE(r.ok);
    bool found = false;
    for (const auto& v : r.violations) found = found || v.find("Xi_{2n} < Gamma_{2n}") != std::string::npos;
    CHECK(found);
  }
}
