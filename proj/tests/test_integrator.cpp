#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "fracdirac/errors.hpp"
#include "fracdirac/integrator.hpp"

#include <cmath>
#include <numbers>

using namespace fracdirac;
using std::numbers::pi;

namespace {

DiracProblem make(const char* p, const char* r, double alpha = 1.0, double b = pi) {
  DiracProblem::Options o;
  o.alpha = alpha;
  o.b = b;
  return DiracProblem(p, r, o);
}

double phi1_end(const DiracProblem& problem, double lambda, int steps) {
  return shoot(lambda, {0.0, 1.0}, Direction::Forward, Discretization(problem, IntegratorConfig::fractal(steps))).f1;
}

} // namespace

TEST_CASE("single step on the free system") {
  const DiracProblem free = make("0", "0", 1.0, 1.0);
  const double h = 0.1;
  const State2 y = frk4_step(0.0, h, {0.0, 1.0}, 1.0, free);
  // RK4 reproduces the rotation (-sin h, cos h) through its fourth-order
  // Taylor polynomial; the gap to the rotation is h^5/120 in f1.
  CHECK(y.f1 == doctest::Approx(-(h - h * h * h / 6)).epsilon(1e-15));
  CHECK(y.f2 == doctest::Approx(1 - h * h / 2 + h * h * h * h / 24).epsilon(1e-15));
  CHECK(std::fabs(y.f1 - -0.0998334166468281523) == doctest::Approx(std::pow(h, 5) / 120).epsilon(1e-3));
  CHECK(std::fabs(y.f2 - 0.995004165278025766) < 2e-9);
}

TEST_CASE("step at alpha = 1 is the textbook RK4 step in x") {
  const DiracProblem p = make("1/(1+S)", "1/(1+S^2)");
  auto f = [](double x, State2 y, double lambda) {
    return State2{(1 / (1 + x * x) - lambda) * y.f2, (lambda + 1 / (1 + x)) * y.f1};
  };
  const double lambda = 0.7;
  const State2 y0{0.3, -1.2};
  const double x0 = 0.4;
  const double h = 0.05;
  const State2 k1 = f(x0, y0, lambda);
  const State2 k2 = f(x0 + h / 2, y0 + (h / 2) * k1, lambda);
  const State2 k3 = f(x0 + h / 2, y0 + (h / 2) * k2, lambda);
  const State2 k4 = f(x0 + h, y0 + h * k3, lambda);
  const State2 want = y0 + (h / 6) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  const State2 got = frk4_step(x0, x0 + h, y0, lambda, p);
  CHECK(got.f1 == doctest::Approx(want.f1).epsilon(1e-14));
  CHECK(got.f2 == doctest::Approx(want.f2).epsilon(1e-14));
}

TEST_CASE("fractal step uses the staircase midpoint") {
  const double alpha = 0.8;
  const DiracProblem p = make("x", "0", alpha);
  const double x0 = 0.5;
  const double x1 = 0.9;
  const double s0 = std::pow(x0, alpha);
  const double h = std::pow(x1, alpha) - s0;
  const double xm = std::pow(s0 + h / 2, 1 / alpha);
  const double lambda = 0.4;
  auto f = [&](double x, State2 y) { return State2{-lambda * y.f2, (lambda + x) * y.f1}; };
  const State2 y0{1.0, 0.5};
  const State2 k1 = f(x0, y0);
  const State2 k2 = f(xm, y0 + (h / 2) * k1);
  const State2 k3 = f(xm, y0 + (h / 2) * k2);
  const State2 k4 = f(x1, y0 + h * k3);
  const State2 want = y0 + (h / 6) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  const State2 got = frk4_step(x0, x1, y0, lambda, p);
  CHECK(got.f1 == doctest::Approx(want.f1).epsilon(1e-14));
  CHECK(got.f2 == doctest::Approx(want.f2).epsilon(1e-14));
}

TEST_CASE("step edge cases") {
  const DiracProblem free = make("0", "0");
  CHECK(frk4_step(0.2, 0.3, {0.4, -0.6}, 0.0, free) == State2{0.4, -0.6});
  CHECK_THROWS_AS(frk4_step(0.2, 0.2, {0.0, 1.0}, 1.0, free), ArgumentError);
  CHECK_THROWS_AS(frk4_step(3.0, 3.5, {0.0, 1.0}, 1.0, free), DomainError);
  // A backward step undoes a forward step up to the truncation error.
  const DiracProblem p = make("exp(S)", "exp(-S)", 0.9);
  const State2 fwd = frk4_step(1.0, 1.01, {0.2, 0.9}, 1.3, p);
  const State2 back = frk4_step(1.01, 1.0, fwd, 1.3, p);
  CHECK(back.f1 == doctest::Approx(0.2).epsilon(1e-9));
  CHECK(back.f2 == doctest::Approx(0.9).epsilon(1e-9));
}

TEST_CASE("free system sweeps match closed forms") {
  for (double alpha : {1.0, 0.9, 0.8}) {
    const DiracProblem free = make("0", "0", alpha);
    const Discretization disc(free, IntegratorConfig::fractal(4096));
    const double lambda = 1.37;
    const Trajectory phi = propagate_phi(lambda, disc);
    const Trajectory psi = propagate_psi(lambda, disc);
    const double sb = std::pow(pi, alpha);
    double worst = 0.0;
    for (std::size_t i = 0; i < phi.size(); ++i) {
      const double s = disc.grid()->staircase_nodes()[i];
      worst = std::max(worst, std::fabs(phi.states[i].f1 + std::sin(lambda * s)));
      worst = std::max(worst, std::fabs(phi.states[i].f2 - std::cos(lambda * s)));
      worst = std::max(worst, std::fabs(psi.states[i].f1 - std::sin(lambda * (sb - s))));
      worst = std::max(worst, std::fabs(psi.states[i].f2 - std::cos(lambda * (sb - s))));
    }
    INFO("alpha=" << alpha);
    CHECK(worst < 1e-8);
    CHECK(phi.front() == State2{0.0, 1.0});
    CHECK(psi.back() == State2{0.0, 1.0});
  }
  // The closed form phi_1(pi) = -sin(lambda pi) at alpha = 1.
  CHECK(std::fabs(phi1_end(make("0", "0"), 0.5, 4096) + 1.0) < 1e-8);
}

TEST_CASE("free eigenfunctions: psi = (-1)^n phi") {
  const Discretization disc(make("0", "0"), IntegratorConfig::fractal(4096));
  for (int n = 1; n <= 3; ++n) {
    const Trajectory phi = propagate_phi(n, disc);
    const Trajectory psi = propagate_psi(n, disc);
    const double sign = n % 2 ? -1.0 : 1.0;
    double worst = 0.0;
    for (std::size_t i = 0; i < phi.size(); ++i) {
      worst = std::max(worst, std::fabs(psi.states[i].f1 - sign * phi.states[i].f1));
      worst = std::max(worst, std::fabs(psi.states[i].f2 - sign * phi.states[i].f2));
    }
    INFO("n=" << n);
    CHECK(worst < 1e-8);
  }
}

TEST_CASE("global error is fourth order") {
  for (double alpha : {1.0, 0.9}) {
    const DiracProblem free = make("0", "0", alpha);
    const double lambda = 2.3;
    const double exact = -std::sin(lambda * std::pow(pi, alpha));
    const double coarse = std::fabs(phi1_end(free, lambda, 64) - exact);
    const double fine = std::fabs(phi1_end(free, lambda, 128) - exact);
    INFO("alpha=" << alpha << " ratio=" << coarse / fine);
    CHECK(coarse / fine == doctest::Approx(16.0).epsilon(0.3));
  }
}

TEST_CASE("backward sweep returns to the starting state") {
  const Discretization disc(make("exp(S)", "exp(-S)", 0.8), IntegratorConfig::fractal(4096));
  const State2 start{0.0, 1.0};
  const State2 end = shoot(1.1, start, Direction::Forward, disc);
  const State2 back = shoot(1.1, end, Direction::Backward, disc);
  CHECK(std::fabs(back.f1 - start.f1) < 1e-8);
  CHECK(std::fabs(back.f2 - start.f2) < 1e-8);
  CHECK(propagate(1.1, start, Direction::Forward, disc).back() == end);
}

TEST_CASE("fractal method at alpha = 1 equals the classical method") {
  const DiracProblem p = make("1/(1+S)", "1/(1+S^2)");
  const Discretization fractal(p, IntegratorConfig::fractal(1024));
  const Discretization classical(p, IntegratorConfig::classical(1024));
  for (double lambda : {0.3, 1.2, 2.9})
    CHECK(shoot(lambda, {0.0, 1.0}, Direction::Forward, fractal) ==
          shoot(lambda, {0.0, 1.0}, Direction::Forward, classical));
}

TEST_CASE("classical method ignores the staircase") {
  const DiracProblem p = make("1/(1+S)", "1/(1+S^2)", 0.8);
  const Discretization classical(p, IntegratorConfig::classical(512));
  CHECK(classical.grid()->staircase_nodes().back() == pi);
  const Discretization fractal(p, IntegratorConfig::fractal(512));
  CHECK(fractal.grid()->staircase_nodes().back() == doctest::Approx(std::pow(pi, 0.8)));
}

TEST_CASE("sweeps are deterministic") {
  const DiracProblem p = make("exp(S)", "exp(-S)", 0.9);
  const Trajectory a = propagate_phi(0.77, p, IntegratorConfig::fractal(2048));
  const Trajectory b = propagate_phi(0.77, p, IntegratorConfig::fractal(2048));
  REQUIRE(a.size() == b.size());
  bool same = true;
  for (std::size_t i = 0; i < a.size(); ++i)
    same = same && a.states[i] == b.states[i];
  CHECK(same);
}

TEST_CASE("configuration and divergence errors") {
  const DiracProblem p = make("0", "0");
  CHECK_THROWS_AS(Discretization(p, IntegratorConfig::fractal(1)), ArgumentError);
  const DiracProblem stiff = make("1e200", "-1e200");
  CHECK_THROWS_AS(propagate_phi(0.0, stiff, IntegratorConfig::fractal(64)), DivergenceError);
}
