#include "fracdirac/dirac_system.hpp"

#include "fracdirac/errors.hpp"

#include <cmath>
#include <cstdio>

namespace fracdirac {

namespace {

std::string position(double x) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

bool same_grid(const Trajectory& u, const Trajectory& v) {
  if (!u.grid || !v.grid)
    return false;
  return u.grid == v.grid || *u.grid == *v.grid;
}

} // namespace

DiracProblem::DiracProblem(std::string p_source, std::string r_source, const Options& options)
  : p_source_(std::move(p_source)), r_source_(std::move(r_source)), p_(parse_coefficient(p_source_)),
    r_(parse_coefficient(r_source_)), options_(options), model_(ScalingModel::power_law(options.alpha)) {
  if (!(options_.a < options_.b))
    throw ArgumentError("interval endpoints must satisfy a < b");
  if (options_.a < 0.0)
    throw ArgumentError("the staircase model needs a >= 0");
  if (options_.steps < 2)
    throw ArgumentError("a problem needs at least 2 grid steps");
}

DiracProblem DiracProblem::with_alpha(double alpha) const {
  Options o = options_;
  o.alpha = alpha;
  return DiracProblem(p_source_, r_source_, o);
}

CoefficientSample DiracProblem::coefficients_at(double x, const ScalingModel& model) const {
  const double s = options_.coefficient_argument == CoefficientArgument::Staircase ? model(x) : x;
  try {
    return {eval_coefficient(p_, s, x), eval_coefficient(r_, s, x)};
  } catch (const EvaluationError& e) {
    throw EvaluationError(std::string(e.what()) + " (coefficient evaluated at x = " + position(x) + ")");
  }
}

State2 rhs(double x, const State2& state, double lambda, const DiracProblem& problem) {
  if (!(x >= problem.a() && x <= problem.b()))
    throw DomainError("x = " + position(x) + " lies outside the problem interval");
  return rhs(problem.coefficients_at(x), state, lambda);
}

std::pair<std::vector<double>, std::vector<double>> apply_operator(const AnalyticPair& f, const DiracProblem& problem,
                                                                   const Grid& grid) {
  const CoefficientExpr d1 = differentiate_in_s(f.f1);
  const CoefficientExpr d2 = differentiate_in_s(f.f2);
  const auto xs = grid.nodes();
  const auto ss = grid.staircase_nodes();
  std::vector<double> first(grid.size());
  std::vector<double> second(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double x = xs[i];
    const double s = ss[i];
    const CoefficientSample c = problem.coefficients_at(x, grid.model());
    const double v1 = eval_coefficient(f.f1, s, x);
    const double v2 = eval_coefficient(f.f2, s, x);
    first[i] = eval_coefficient(d2, s, x) - c.p * v1;
    second[i] = -eval_coefficient(d1, s, x) + c.r * v2;
  }
  return {std::move(first), std::move(second)};
}

double inner_product(const Trajectory& u, const Trajectory& v) {
  if (!same_grid(u, v))
    throw ArgumentError("inner product of trajectories on different grids");
  if (u.size() != u.grid->size() || v.size() != v.grid->size())
    throw ArgumentError("trajectory length does not match its grid");
  std::vector<double> integrand(u.size());
  for (std::size_t i = 0; i < u.size(); ++i)
    integrand[i] = u.states[i].f1 * v.states[i].f1 + u.states[i].f2 * v.states[i].f2;
  return falpha_integral(*u.grid, integrand);
}

Trajectory sample_pair(const AnalyticPair& f, std::shared_ptr<const Grid> grid) {
  Trajectory t;
  const auto xs = grid->nodes();
  const auto ss = grid->staircase_nodes();
  t.states.resize(grid->size());
  for (std::size_t i = 0; i < grid->size(); ++i)
    t.states[i] = {eval_coefficient(f.f1, ss[i], xs[i]), eval_coefficient(f.f2, ss[i], xs[i])};
  t.grid = std::move(grid);
  return t;
}

double lagrange_defect(const AnalyticPair& f, const AnalyticPair& g, const DiracProblem& problem, const Grid& grid) {
  auto shared = std::make_shared<const Grid>(grid);
  auto [lf1, lf2] = apply_operator(f, problem, grid);
  auto [lg1, lg2] = apply_operator(g, problem, grid);
  const Trajectory fs = sample_pair(f, shared);
  const Trajectory gs = sample_pair(g, shared);

  std::vector<double> lf_g(grid.size());
  std::vector<double> f_lg(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    lf_g[i] = lf1[i] * gs.states[i].f1 + lf2[i] * gs.states[i].f2;
    f_lg[i] = fs.states[i].f1 * lg1[i] + fs.states[i].f2 * lg2[i];
  }
  auto bracket = [](const State2& fv, const State2& gv) { return fv.f2 * gv.f1 - fv.f1 * gv.f2; };
  const double boundary = bracket(fs.back(), gs.back()) - bracket(fs.front(), gs.front());
  return std::fabs(falpha_integral(grid, lf_g) - falpha_integral(grid, f_lg) - boundary);
}

} // namespace fracdirac
