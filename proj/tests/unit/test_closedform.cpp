#include <doctest.h>

#include <cmath>
#include <numbers>
#include <numeric>

#include "quditchain/closedform.hpp"
#include "quditchain/types.hpp"

using namespace quditchain;
namespace cf = quditchain::closedform;
using cf::EigenFamily;
using cf::Formula;

namespace {

const std::vector<EigenFamily> kFamilies{
    EigenFamily::Biqutrit,  EigenFamily::Chain3,    EigenFamily::Chain4,
    EigenFamily::Chain5,    EigenFamily::Chain6,    EigenFamily::Biquartit,
    EigenFamily::Quartit3,  EigenFamily::Bipentit,  EigenFamily::BiqutritPartialTranspose,
    EigenFamily::BiquartitPartialTranspose};

double sum(const std::vector<double>& v) { return std::accumulate(v.begin(), v.end(), 0.0); }

std::optional<double> q_for(Formula f) {
  return cf::needs_anisotropy(f) ? std::optional<double>(0.0) : std::nullopt;
}

}  // namespace

TEST_CASE("catalog identifiers round-trip") {
  CHECK(cf::all_formulas().size() == 17);
  for (Formula f : cf::all_formulas()) CHECK(cf::formula_from_name(cf::formula_name(f)) == f);
  for (EigenFamily f : kFamilies) CHECK(cf::family_from_name(cf::family_name(f)) == f);
  CHECK(cf::formula_name(Formula::BiqutritMSM) == "biqutrit_mSM");
  CHECK(cf::formula_name(Formula::Chain3Eta) == "chain3_eta");
  CHECK_THROWS_AS(cf::formula_from_name("biqutrit_mXX"), InvalidArgument);
  CHECK_THROWS_AS(cf::family_from_name("nonsense"), InvalidArgument);
  CHECK(cf::is_truncated(Formula::Quartit3Eta));
  CHECK_FALSE(cf::is_truncated(Formula::BipentitEta));
}

TEST_CASE("anisotropy constant handling") {
  CHECK_THROWS_AS(cf::eval(Formula::BiqutritMSM, 0.1, 1.0, 0.02), InvalidArgument);
  CHECK_THROWS_AS(cf::eval(Formula::BiqutritMSMAniso, 0.1, 1.0), InvalidArgument);
  CHECK_THROWS_AS(cf::eval(Formula::BiqutritMSMAniso, 0.0, 1.0, 0.0), InvalidArgument);
  CHECK(cf::anisotropy_frequency(0.1, 0.025) == doctest::Approx(std::sqrt(0.12)));
}

TEST_CASE("values at t = 0") {
  for (Formula f : cf::all_formulas()) {
    CAPTURE(cf::formula_name(f));
    const double v = cf::eval(f, 0.1, 0.0, q_for(f));
    const double expected = f == Formula::BiquartitMVW ? 1.5 : 1.0;
    const double tol = cf::is_truncated(f) ? 2e-3 : 1e-12;
    CHECK(std::abs(v - expected) < tol);
  }
  CHECK(std::abs(cf::eval(Formula::BiqutritMSMAniso, 0.1, 0.0, 0.025) - 1.0) < 1e-12);
  for (double r : cf::reduced_eigenvalues(EigenFamily::Chain6, 0.1, 0.0))
    CHECK(std::abs(r - 1.0 / 3.0) < 1e-15);
  const auto p = cf::reduced_eigenvalues(EigenFamily::Bipentit, 0.1, 0.0);
  REQUIRE(p.size() == 5);
  for (double x : p) CHECK(std::abs(x - 0.2) < 1e-15);
  const auto pt = cf::reduced_eigenvalues(EigenFamily::BiqutritPartialTranspose, 0.1, 0.0);
  for (double x : pt) CHECK(std::abs(x + 1.0 / 3.0) < 1e-15);
}

TEST_CASE("the anisotropic form reduces to the isotropic one at Q = 0") {
  for (int i = 0; i < 10; ++i) {
    const double J = 0.01 + 0.11 * i;
    for (int j = 0; j < 1000; ++j) {
      const double t = 0.1 * j;
      CHECK(std::abs(cf::eval(Formula::BiqutritMSMAniso, J, t, 0.0) -
                     cf::eval(Formula::BiqutritMSM, J, t)) < 1e-12);
    }
  }
}

TEST_CASE("eigenvalue rows sum to one") {
  for (EigenFamily f : kFamilies) {
    if (f == EigenFamily::BiqutritPartialTranspose || f == EigenFamily::BiquartitPartialTranspose)
      continue;
    CAPTURE(cf::family_name(f));
    for (double t = 0.0; t <= 100.0; t += 0.5) {
      const auto v = cf::reduced_eigenvalues(f, 0.1, t);
      const double tol = f == EigenFamily::Quartit3 ? 1e-3 : 1e-14;
      CHECK(std::abs(sum(v) - 1.0) <= tol);
      for (double x : v) CHECK(x >= 0.0);
    }
  }
}

TEST_CASE("Q-free formulas are even in J") {
  for (Formula f : cf::all_formulas()) {
    CAPTURE(cf::formula_name(f));
    for (double J : {0.05, 0.1, 0.7})
      for (double t : {0.3, 4.0, 17.5, 93.0})
        CHECK(std::abs(cf::eval(f, J, t, q_for(f)) - cf::eval(f, -J, t, q_for(f))) < 1e-12);
  }
}

TEST_CASE("the anisotropic form is not even in J at non-zero Q") {
  const double a = cf::eval(Formula::BiqutritMSMAniso, 0.1, 9.069, 0.025);
  const double b = cf::eval(Formula::BiqutritMSMAniso, -0.1, 9.069, 0.025);
  CHECK(std::abs(a - b) > 0.5);
}

TEST_CASE("bi-qutrit formulas have period 2 pi / (3 |J|)") {
  for (Formula f : {Formula::BiqutritMVW, Formula::BiqutritMSM, Formula::BiqutritEta,
                    Formula::BiqutritMI}) {
    for (double J : {0.1, -0.4}) {
      const double period = 2.0 * std::numbers::pi / (3.0 * std::abs(J));
      for (double t : {0.0, 1.1, 5.9})
        CHECK(std::abs(cf::eval(f, J, t) - cf::eval(f, J, t + period)) < 1e-12);
    }
  }
}

TEST_CASE("formula ranges on a dense grid") {
  for (Formula f : cf::all_formulas()) {
    CAPTURE(cf::formula_name(f));
    const double upper = f == Formula::BiquartitMVW ? 1.5 : 1.0;
    // Rounded decimal rows may overshoot by their rounding error.
    const double slack = cf::is_truncated(f) ? 2e-3 : 1e-9;
    for (double J : {-1.0, -0.1, 0.01, 0.1, 0.5, 1.0})
      for (int j = 0; j <= 2000; ++j) {
        const double v = cf::eval(f, J, 0.05 * j, q_for(f));
        CHECK(v >= -slack);
        CHECK(v <= upper + slack);
      }
  }
  for (double Q : {-0.3, 0.025, 0.2})
    for (int j = 0; j <= 2000; ++j) {
      const double v = cf::eval(Formula::BiqutritMSMAniso, 0.1, 0.3 * j, Q);
      CHECK(v >= 0.0);
      CHECK(v <= 1.0 + 1e-9);
    }
}

TEST_CASE("anisotropy frequency is positive away from the origin") {
  for (double J = -1.0; J <= 1.0; J += 0.1)
    for (double Q = -1.0; Q <= 1.0; Q += 0.1)
      if (std::abs(J) + std::abs(Q) > 1e-9) CHECK(cf::anisotropy_frequency(J, Q) > 0.0);
}

TEST_CASE("entropy helper") {
  CHECK(cf::entropy({1.0, 0.0, 0.0}, 3.0) == 0.0);
  CHECK(std::abs(cf::entropy({1.0 / 3, 1.0 / 3, 1.0 / 3}, 3.0) - 1.0) < 1e-15);
  CHECK(std::abs(cf::entropy({0.5, 0.5}, 2.0) - 1.0) < 1e-15);
}

TEST_CASE("eigenvalue rows and derived measures") {
  for (double t : {0.0, 2.0, 13.7}) {
    const double x = 3.0 * 0.1 * t;
    const auto l = cf::reduced_eigenvalues(EigenFamily::Biqutrit, 0.1, t);
    CHECK(std::abs(l[0] - (5 + 4 * std::cos(x)) / 27.0) < 1e-15);
    CHECK(std::abs(l[2] - (17 - 8 * std::cos(x)) / 27.0) < 1e-15);
    const auto r = cf::reduced_eigenvalues(EigenFamily::Chain3, 0.1, t);
    CHECK(std::abs(r[0] - (29 - 4 * std::cos(5 * 0.1 * t)) / 75.0) < 1e-15);
    // I-concurrence from the reduced purity.
    double purity = 0.0;
    for (double v : l) purity += v * v;
    CHECK(std::abs(cf::eval(Formula::BiqutritMI, 0.1, t) - std::sqrt(1.5 * (1.0 - purity))) <
          1e-14);
  }
}
