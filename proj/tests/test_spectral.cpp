#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "fracdirac/errors.hpp"
#include "fracdirac/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

using namespace fracdirac;
using std::numbers::pi;

namespace {

DiracProblem make(const char* p, const char* r, double alpha = 1.0) {
  DiracProblem::Options o;
  o.alpha = alpha;
  return DiracProblem(p, r, o);
}

const Discretization& free_disc() {
  static const Discretization disc(make("0", "0"), IntegratorConfig::fractal(4096));
  return disc;
}

} // namespace

TEST_CASE("free characteristic function") {
  CHECK(characteristic(0.5, free_disc()) == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(std::fabs(characteristic(1.0, free_disc())) < 1e-8);
  for (double lambda : {0.3, 1.7, 2.45})
    CHECK(std::fabs(characteristic(lambda, free_disc()) - std::sin(lambda * pi)) < 1e-8);
}

TEST_CASE("characteristic from either end agrees") {
  for (double alpha : {1.0, 0.8}) {
    const Discretization disc(make("exp(S)", "exp(-S)", alpha), IntegratorConfig::fractal(4096));
    for (double lambda : {0.2, 0.9, 1.6, 2.8}) {
      const double fwd = characteristic(lambda, disc);
      const double bwd = characteristic_via_psi(lambda, disc);
      CHECK(std::fabs(fwd - bwd) < 1e-6 * (1 + std::fabs(fwd)));
    }
  }
}

TEST_CASE("wronskian is constant in x") {
  const Discretization disc(make("1/(1+S)", "1/(1+S^2)", 0.9), IntegratorConfig::fractal(4096));
  for (double lambda : {0.5, 1.0, 2.0}) {
    const std::vector<double> w = wronskian_profile(lambda, disc);
    const auto [lo, hi] = std::minmax_element(w.begin(), w.end());
    const double delta = characteristic(lambda, disc);
    CHECK((*hi - *lo) / (1 + std::fabs(delta)) < 1e-5);
    CHECK(w.front() == doctest::Approx(delta).epsilon(1e-6));
  }
  const std::vector<double> w = wronskian_profile(0.5, free_disc());
  for (double v : w)
    CHECK(v == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("scan and brackets") {
  SUBCASE("free system") {
    const auto samples = scan_characteristic(0.2, 3.5, 34, free_disc());
    REQUIRE(samples.size() == 34);
    CHECK(samples.front().lambda == 0.2);
    CHECK(samples.back().lambda == 3.5);
    const auto brackets = find_brackets(samples);
    REQUIRE(brackets.size() == 3);
    for (int n = 1; n <= 3; ++n) {
      CHECK(brackets[n - 1].lo <= n);
      CHECK(brackets[n - 1].hi >= n);
    }
  }
  SUBCASE("example 1") {
    const Discretization disc(make("1/(1+S)", "1/(1+S^2)"), IntegratorConfig::fractal(4096));
    CHECK(find_brackets(scan_characteristic(0.05, 3.14, 311, disc)).size() == 4);
  }
  SUBCASE("exact zeros and divergence") {
    auto at = [](double lambda, double delta) { return CharacteristicSample{.lambda = lambda, .delta = delta, .ok = true, .error = {}}; };
    std::vector<CharacteristicSample> s = {at(0.0, 1.0), at(0.5, 0.0), at(1.0, -1.0), at(1.5, 2.0)};
    s.push_back({.lambda = 2.0, .delta = std::nan(""), .ok = false, .error = "diverged"});
    s.push_back(at(2.5, -1.0));
    const auto b = find_brackets(s);
    REQUIRE(b.size() == 2);
    CHECK(b[0].lo == 0.5);
    CHECK(b[0].hi == 0.5);
    CHECK(b[1].lo == 1.0);
    CHECK(b[1].hi == 1.5);
  }
  SUBCASE("diverged samples are recorded") {
    const Discretization stiff(make("1e200", "-1e200"), IntegratorConfig::fractal(64));
    const auto samples = scan_characteristic(0.1, 0.2, 3, stiff);
    for (const auto& s : samples) {
      CHECK_FALSE(s.ok);
      CHECK(std::isnan(s.delta));
      CHECK_FALSE(s.error.empty());
    }
  }
  CHECK_THROWS_AS(scan_characteristic(1.0, 1.0, 10, free_disc()), ArgumentError);
  CHECK_THROWS_AS(scan_characteristic(0.0, 1.0, 1, free_disc()), ArgumentError);
}

TEST_CASE("refine_eigenvalue") {
  const RefinedRoot root = refine_eigenvalue({0.9, 1.1}, 1e-9, free_disc());
  CHECK(std::fabs(root.lambda - 1.0) < 1e-9);
  CHECK(root.residual < 1e-9);
  CHECK(root.iterations > 0);
  CHECK(root.iterations <= kMaxBisections);
  CHECK_THROWS_AS(refine_eigenvalue({1.2, 1.4}, 1e-9, free_disc()), ArgumentError);
  CHECK_THROWS_AS(refine_eigenvalue({1.1, 0.9}, 1e-9, free_disc()), ArgumentError);
  CHECK_THROWS_AS(refine_eigenvalue({0.9, 1.1}, 0.0, free_disc()), ArgumentError);
  CHECK_THROWS_AS(refine_eigenvalue({0.7, 0.7}, 1e-9, free_disc()), ArgumentError);
  // Below the spacing of doubles the bracket cannot shrink further.
  CHECK_THROWS_AS(refine_eigenvalue({0.9, 1.1}, 1e-300, free_disc()), ConvergenceError);
}

TEST_CASE("free spectrum closed forms") {
  SolveOptions window;
  const Discretization disc(make("0", "0"), IntegratorConfig::fractal(8192));
  const SpectrumResult s = solve_spectrum(window, disc);
  CHECK(s.failures.empty());
  REQUIRE(s.pairs.size() == 3);
  for (const Eigenpair& pair : s.pairs) {
    const int n = pair.index;
    INFO("n=" << n);
    CHECK(std::fabs(pair.lambda - n) < 1e-6);
    CHECK(std::fabs(pair.weight - pi) < 1e-5);
    CHECK(std::fabs(pair.beta - (n % 2 ? -1.0 : 1.0)) < 1e-5);
    CHECK(pair.phi.front() == State2{0.0, 1.0});
    const RelationCheck rel = check_relation_2_8(pair, disc);
    CHECK(rel.defect < 1e-4);
    CHECK(rel.slope == doctest::Approx(pi * (n % 2 ? -1.0 : 1.0)).epsilon(1e-6));
    CHECK(std::isfinite(rel.staircase_slope));
  }
  CHECK(max_off_diagonal(orthogonality_matrix(s.pairs)) < 1e-8);
}

TEST_CASE("example spectra") {
  SolveOptions window;
  SUBCASE("example 3 at alpha 1 has six eigenvalues") {
    const auto s = solve_spectrum(window, make("exp(S)", "exp(-S)"), IntegratorConfig::fractal(4096));
    CHECK(s.failures.empty());
    REQUIRE(s.pairs.size() == 6);
    CHECK(s.pairs[0].lambda == doctest::Approx(0.148677).epsilon(2e-3));
    CHECK(max_off_diagonal(orthogonality_matrix(s.pairs)) < 1e-4);
    for (std::size_t i = 0; i < s.pairs.size(); ++i)
      CHECK(s.pairs[i].index == static_cast<int>(i) + 1);
  }
  SUBCASE("example 1 at alpha 0.8 has three eigenvalues") {
    const auto s = solve_spectrum(window, make("1/(1+S)", "1/(1+S^2)", 0.8), IntegratorConfig::fractal(4096));
    CHECK(s.failures.empty());
    CHECK(s.pairs.size() == 3);
  }
  SUBCASE("indices restart inside a narrower window") {
    SolveOptions narrow;
    narrow.lambda_min = 1.5;
    narrow.lambda_max = 3.5;
    narrow.scan_points = 101;
    const auto s = solve_spectrum(narrow, free_disc());
    REQUIRE(s.pairs.size() == 2);
    CHECK(s.pairs[0].lambda == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(s.pairs[0].index == 1);
    CHECK(s.pairs[1].lambda == doctest::Approx(3.0).epsilon(1e-9));
    CHECK(s.pairs[1].index == 2);
  }
}

TEST_CASE("solve rejects invalid options") {
  SolveOptions bad;
  bad.tol = 0.0;
  CHECK_THROWS_AS(solve_spectrum(bad, free_disc()), ArgumentError);
  bad = {};
  bad.scan_points = 1;
  CHECK_THROWS_AS(solve_spectrum(bad, free_disc()), ArgumentError);
}

TEST_CASE("beta constant") {
  const BetaEstimate b = beta_constant(2.0, free_disc());
  CHECK(b.beta == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(b.least_squares == doctest::Approx(1.0).epsilon(1e-8));
  CHECK_THROWS_AS(beta_constant(0.5, free_disc()), ConsistencyError);
}

TEST_CASE("orthogonality matrix") {
  CHECK_THROWS_AS(orthogonality_matrix({}), ArgumentError);
  CHECK(max_off_diagonal({{1.0, -0.3}, {-0.3, 1.0}}) == 0.3);
  CHECK(max_off_diagonal({{1.0}}) == 0.0);
}

TEST_CASE("convergence study") {
  SolveOptions window;
  window.tol = kStudyTolerance;
  const ConvergenceStudy study =
    convergence_study(make("0", "0"), Method::FractalRK4, window, {64, 128, 256, 512}, 1);
  REQUIRE(study.levels.size() == 4);
  REQUIRE(study.observed_orders.size() == 2);
  for (double order : study.observed_orders)
    CHECK(order == doctest::Approx(4.0).epsilon(0.125));
  for (double order : orders_against(study, 1.0))
    CHECK(order == doctest::Approx(4.0).epsilon(0.125));

  CHECK_THROWS_AS(convergence_study(make("0", "0"), Method::FractalRK4, window, {64, 128}), ArgumentError);
  CHECK_THROWS_AS(convergence_study(make("0", "0"), Method::FractalRK4, window, {64, 100, 200}), ArgumentError);
  CHECK_THROWS_AS(convergence_study(make("0", "0"), Method::FractalRK4, window, {64, 128, 256}, 0), ArgumentError);
  CHECK_THROWS_AS(convergence_study(make("0", "0"), Method::FractalRK4, window, {64, 128, 256}, 9),
                  ConvergenceError);
}
