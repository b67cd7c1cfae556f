#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "catlab/analysis.hpp"
#include "catlab/timings.hpp"

using namespace catlab;
namespace tmg = catlab::timings;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("three-pulse scheme time") {
  CHECK(tmg::prep_time_this_paper(2.0) ==
        doctest::Approx(2.5066).epsilon(1e-4));
  CHECK(tmg::format_sig3(tmg::prep_time_this_paper(2.0)) == "2.51");
  CHECK(tmg::prep_time_this_paper(3.0) ==
        doctest::Approx(2.0467).epsilon(1e-4));
  CHECK(tmg::format_sig3(tmg::prep_time_this_paper(3.0)) == "2.05");
  CHECK_THROWS_AS(tmg::prep_time_this_paper(0.0), std::invalid_argument);
}

TEST_CASE("three-pulse time is the separation threshold in disguise") {
  // sqrt(4 pi / eta) = sqrt(2 pi / xi) with xi = eta/2
  for (double eta : {0.7, 2.0, 3.0}) {
    const auto p = model::params_new(eta, 0.1, 0.0).first;
    CHECK(tmg::prep_time_this_paper(eta) ==
          doctest::Approx(analysis::separation_time_ok(p, 0.0).threshold)
              .epsilon(1e-14));
  }
}

TEST_CASE("alternating-pulse scheme time") {
  CHECK(tmg::prep_time_ref2(0.202) == doctest::Approx(4.0876).epsilon(1e-4));
  CHECK(tmg::format_sig3(tmg::prep_time_ref2(0.202)) == "4.09");
  // root of the formula
  CHECK(tmg::prep_time_ref2(std::sqrt(kPi / 2.0)) ==
        doctest::Approx(0.0).epsilon(1e-12));
  // decreasing on its domain
  double prev = 1e300;
  for (double eta : {0.1, 0.2, 0.5, 1.0}) {
    const double v = tmg::prep_time_ref2(eta);
    CHECK(v < prev);
    prev = v;
  }
  CHECK_THROWS_AS(tmg::prep_time_ref2(2.0), std::domain_error);
  CHECK_THROWS_AS(tmg::prep_time_ref2(-1.0), std::invalid_argument);
}

TEST_CASE("weak-excitation Lamb-Dicke scheme time") {
  CHECK(tmg::prep_time_ref16(0.202, 0.1) == doctest::Approx(158.73).epsilon(1e-4));
  CHECK(tmg::format_sig3(tmg::prep_time_ref16(0.202, 0.1)) == "159");
  CHECK(tmg::prep_time_ref16(1.0, 1.0) ==
        doctest::Approx(kPi * std::exp(0.5)).epsilon(1e-12));
  // scales as 1/omega
  CHECK(tmg::prep_time_ref16(0.202, 0.2) ==
        doctest::Approx(0.5 * tmg::prep_time_ref16(0.202, 0.1)).epsilon(1e-14));
  CHECK_THROWS_AS(tmg::prep_time_ref16(0.0, 0.1), std::invalid_argument);
  CHECK_THROWS_AS(tmg::prep_time_ref16(0.2, 0.0), std::invalid_argument);
}

TEST_CASE("spontaneous-emission floor") {
  CHECK(tmg::prep_time_ref14_floor(1e7, 1.0) == doctest::Approx(1e7));
  CHECK(tmg::format_sig3(tmg::prep_time_ref14_floor(1e7, 1.0)) == "1.00e7");
  CHECK(tmg::prep_time_ref14_floor(1e7, 10.0) == doctest::Approx(1e8));
  CHECK(tmg::prep_time_ref14_floor(1.0, 1.0) == doctest::Approx(1.0));
  CHECK_THROWS_AS(tmg::prep_time_ref14_floor(-1.0, 1.0), std::invalid_argument);
}

TEST_CASE("comparison table: defaults, recompute determinism, ordering") {
  model::ParamsOptions opt;
  opt.nu_hz = 1e7;
  const auto ldl = model::params_new(0.202, 0.1, 0.0, opt).first;
  const auto beyond = model::params_new(2.0, 0.1, 0.0, opt).first;
  const auto rows = tmg::comparison_table(ldl, beyond, 1.0);
  REQUIRE(rows.size() == 4);

  CHECK(tmg::format_sig3(rows[0].value) == "4.09");
  CHECK(tmg::format_sig3(rows[1].value) == "159");
  CHECK(tmg::format_sig3(rows[2].value) == "2.51");
  CHECK(tmg::format_sig3(rows[3].value) == "1.00e7");

  // every row recomputes bit-identically from its stored inputs
  for (const auto& r : rows)
    CHECK(tmg::recompute(r) == r.value);

  // qualitative ordering at the default inputs
  CHECK(rows[2].value < rows[0].value); // this_paper < ref2
  CHECK(rows[0].value < rows[1].value); // ref2 < ref16
  CHECK(rows[1].value < rows[3].value); // ref16 < ref14 floor

  const auto beyond3 = model::params_new(3.0, 0.1, 0.0, opt).first;
  const auto rows3 = tmg::comparison_table(ldl, beyond3, 1.0);
  CHECK(tmg::format_sig3(rows3[2].value) == "2.05");
}

TEST_CASE("3-significant-figure formatting") {
  CHECK(tmg::format_sig3(4.08762) == "4.09");
  CHECK(tmg::format_sig3(158.73) == "159");
  CHECK(tmg::format_sig3(2.50663) == "2.51");
  CHECK(tmg::format_sig3(2.04665) == "2.05");
  CHECK(tmg::format_sig3(1e7) == "1.00e7");
  CHECK(tmg::format_sig3(1e8) == "1.00e8");
  CHECK(tmg::format_sig3(0.0) == "0");
}
