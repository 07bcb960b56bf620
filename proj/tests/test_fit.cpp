#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "besov_ns/fit.hpp"

#include <cmath>

using namespace besov_ns;

TEST_CASE("fit_rate") {
  const FitResult a = fit_rate({0, 1, 2, 5}, {1, 3, 5, 11});
  CHECK(a.slope == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(a.intercept == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(a.r_squared == 1.0);
  CHECK(a.n_points == 4);
  CHECK(fit_rate({1, 2, 3}, {4, 4, 4}).slope == 0.0);
  std::vector<double> t, y;
  for (int i = 0; i < 10; ++i) {
    t.push_back(0.3 * i);
    y.push_back(std::log(std::exp(-0.5 * t.back())));
  }
  CHECK(std::abs(fit_rate(t, y).slope + 0.5) < 1e-12);
  CHECK_THROWS_WITH(fit_rate({1, 1, 1}, {1, 2, 3}), "degenerate xs");
  CHECK_THROWS_WITH(fit_rate({1, 2, 1}, {1, 2, 3}), "degenerate xs");
  CHECK_THROWS(fit_rate({1, 2}, {1, 2}));
}
