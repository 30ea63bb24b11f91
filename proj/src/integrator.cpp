#include "fracdirac/integrator.hpp"

#include "fracdirac/errors.hpp"

#include <cmath>
#include <string>

namespace fracdirac {

namespace {

bool finite(const State2& s) { return std::isfinite(s.f1) && std::isfinite(s.f2); }

void check_step(const State2& y, std::size_t step, double lambda) {
  if (!finite(y))
    throw DivergenceError("non-finite state after step " + std::to_string(step) + " at lambda = " +
                          std::to_string(lambda));
}

ScalingModel integration_model(const DiracProblem& problem, const IntegratorConfig& config) {
  return config.method == Method::ClassicalRK4 ? ScalingModel::identity() : problem.model();
}

template <class Visit>
State2 sweep(double lambda, State2 y, Direction direction, const Discretization& disc, Visit&& visit) {
  const Grid& grid = *disc.grid();
  const auto s = grid.staircase_nodes();
  const std::size_t n = grid.steps();
  if (direction == Direction::Forward) {
    visit(0, y);
    for (std::size_t i = 0; i < n; ++i) {
      y = rk4_kernel(y, lambda, s[i + 1] - s[i], disc.node_coefficients(i), disc.mid_coefficients(i),
                     disc.node_coefficients(i + 1));
      check_step(y, i + 1, lambda);
      visit(i + 1, y);
    }
  } else {
    visit(n, y);
    for (std::size_t i = n; i > 0; --i) {
      y = rk4_kernel(y, lambda, s[i - 1] - s[i], disc.node_coefficients(i), disc.mid_coefficients(i - 1),
                     disc.node_coefficients(i - 1));
      check_step(y, n - i + 1, lambda);
      visit(i - 1, y);
    }
  }
  return y;
}

} // namespace

void IntegratorConfig::validate() const {
  if (steps < 2)
    throw ArgumentError("integrator needs at least 2 steps, got " + std::to_string(steps));
}

State2 rk4_kernel(const State2& y, double lambda, double h, const CoefficientSample& start,
                  const CoefficientSample& mid, const CoefficientSample& end) {
  const State2 k1 = rhs(start, y, lambda);
  const State2 k2 = rhs(mid, y + (0.5 * h) * k1, lambda);
  const State2 k3 = rhs(mid, y + (0.5 * h) * k2, lambda);
  const State2 k4 = rhs(end, y + h * k3, lambda);
  const State2 incr = k1 + 2.0 * k2 + 2.0 * k3 + k4;
  return y + (h / 6.0) * incr;
}

State2 frk4_step(double x_n, double x_next, const State2& y_n, double lambda, const DiracProblem& problem) {
  if (x_n == x_next)
    throw ArgumentError("step endpoints coincide");
  for (double x : {x_n, x_next})
    if (!(x >= problem.a() && x <= problem.b()))
      throw DomainError("step endpoint " + std::to_string(x) + " lies outside the problem interval");
  const ScalingModel& model = problem.model();
  const double s0 = model(x_n);
  const double h = model(x_next) - s0;
  const double x_mid = model.inverse(s0 + 0.5 * h);
  const State2 y = rk4_kernel(y_n, lambda, h, problem.coefficients_at(x_n), problem.coefficients_at(x_mid),
                              problem.coefficients_at(x_next));
  if (!finite(y))
    throw DivergenceError("non-finite state stepping from x = " + std::to_string(x_n));
  return y;
}

Discretization::Discretization(const DiracProblem& problem, const IntegratorConfig& config)
  : problem_(problem), config_(config) {
  config_.validate();
  const ScalingModel model = integration_model(problem, config);
  grid_ = std::make_shared<const Grid>(make_uniform_grid(problem.a(), problem.b(), config.steps, model));
  const auto xs = grid_->nodes();
  const auto ss = grid_->staircase_nodes();
  nodes_.reserve(xs.size());
  mids_.reserve(xs.size() - 1);
  for (double x : xs)
    nodes_.push_back(problem_.coefficients_at(x, model));
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    const double t_mid = ss[i] + 0.5 * (ss[i + 1] - ss[i]);
    mids_.push_back(problem_.coefficients_at(model.inverse(t_mid), model));
  }
}

Trajectory propagate(double lambda, const State2& start, Direction direction, const Discretization& disc) {
  Trajectory t;
  t.grid = disc.grid();
  t.lambda = lambda;
  t.states.resize(t.grid->size());
  sweep(lambda, start, direction, disc, [&](std::size_t i, const State2& y) { t.states[i] = y; });
  return t;
}

State2 shoot(double lambda, const State2& start, Direction direction, const Discretization& disc) {
  return sweep(lambda, start, direction, disc, [](std::size_t, const State2&) {});
}

Trajectory propagate_phi(double lambda, const Discretization& disc) {
  return propagate(lambda, {0.0, 1.0}, Direction::Forward, disc);
}

Trajectory propagate_phi(double lambda, const DiracProblem& problem, const IntegratorConfig& config) {
  return propagate_phi(lambda, Discretization(problem, config));
}

Trajectory propagate_psi(double lambda, const Discretization& disc) {
  return propagate(lambda, {0.0, 1.0}, Direction::Backward, disc);
}

Trajectory propagate_psi(double lambda, const DiracProblem& problem, const IntegratorConfig& config) {
  return propagate_psi(lambda, Discretization(problem, config));
}

} // namespace fracdirac
