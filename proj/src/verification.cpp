#include "fracdirac/verification.hpp"

#include "fracdirac/errors.hpp"
#include "fracdirac/presets.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace fracdirac {

namespace {

constexpr double kAlphas[] = {0.8, 0.9, 1.0};

// Thresholds of the invariant suites.
constexpr double kOrthogonalityLimit = 1e-4;
constexpr double kWronskianLimit = 1e-5;
constexpr double kForwardBackwardLimit = 1e-6;
constexpr double kRelationLimit = 1e-3;
constexpr double kExpectedOrder = 4.0;
constexpr double kOrderSlack = 1.0;
constexpr int kLagrangeCoarse = 64;
constexpr int kForwardBackwardSamples = 32;
constexpr double kWronskianLambdas[] = {0.5, 1.0, 2.0};
const std::vector<int> kConvergenceLevels = {128, 256, 512, 1024};

struct LagrangeCase {
  const char* name;
  const char* f1;
  const char* f2;
  const char* g1;
  const char* g2;
};

constexpr LagrangeCase kLagrangeCases[] = {
  {"trig", "sin(S)", "cos(S)", "cos(2*S)", "sin(S/2)"},
  {"poly", "S^2", "S", "S", "S^3"},
  {"mixed", "exp(S)", "sin(2*S)", "cos(S)", "S^2+1"},
};

std::string fmt(const char* pattern, double v) {
  char buf[96];
  std::snprintf(buf, sizeof buf, pattern, v);
  return buf;
}

std::string label(int example, std::optional<double> alpha) {
  std::string s = "example " + std::to_string(example);
  s += alpha ? fmt(" alpha=%.1f", *alpha) : std::string(" classical");
  return s;
}

DiracProblem make_problem(const Preset& preset, double alpha, const RunSettings& settings) {
  DiracProblem::Options o;
  o.alpha = alpha;
  o.steps = settings.steps;
  o.coefficient_argument = settings.coefficient_argument;
  return DiracProblem(preset.p, preset.r, o);
}

SolveOptions window(const RunSettings& settings) {
  SolveOptions w;
  w.scan_points = settings.scan_points;
  w.tol = settings.tol;
  return w;
}

void below(VerifyReport& report, const char* suite, std::string name, double value, double threshold) {
  report.checks.push_back({suite, std::move(name), value, threshold, Comparison::Below, 0.0, value < threshold});
}

void above(VerifyReport& report, const char* suite, std::string name, double value, double threshold) {
  report.checks.push_back({suite, std::move(name), value, threshold, Comparison::Above, 0.0, value > threshold});
}

void near(VerifyReport& report, const char* suite, std::string name, double value, double target, double slack) {
  report.checks.push_back(
    {suite, std::move(name), value, slack, Comparison::Near, target, std::fabs(value - target) <= slack});
}

void orthogonality_suite(VerifyReport& report, const RunSettings& settings) {
  for (const Preset& preset : presets()) {
    for (double alpha : kAlphas) {
      const Discretization disc(make_problem(preset, alpha, settings), IntegratorConfig::fractal(settings.steps));
      const SpectrumResult spectrum = solve_spectrum(window(settings), disc);
      const std::string name = label(preset.id, alpha) + " (" + std::to_string(spectrum.pairs.size()) + " pairs)";
      if (spectrum.pairs.empty()) {
        below(report, "orthogonality", name, NAN, kOrthogonalityLimit);
        continue;
      }
      const double worst = max_off_diagonal(orthogonality_matrix(spectrum.pairs));
      below(report, "orthogonality", name, worst, kOrthogonalityLimit);
    }
  }
}

void lagrange_suite(VerifyReport& report, const RunSettings& settings) {
  for (const Preset& preset : presets()) {
    for (double alpha : kAlphas) {
      const DiracProblem problem = make_problem(preset, alpha, settings);
      for (const LagrangeCase& c : kLagrangeCases) {
        const AnalyticPair f = AnalyticPair::parse(c.f1, c.f2);
        const AnalyticPair g = AnalyticPair::parse(c.g1, c.g2);
        const double coarse =
          lagrange_defect(f, g, problem, make_uniform_grid(problem.a(), problem.b(), kLagrangeCoarse, problem.model()));
        const double fine = lagrange_defect(
          f, g, problem, make_uniform_grid(problem.a(), problem.b(), 2 * kLagrangeCoarse, problem.model()));
        const double ratio = coarse / fine;
        near(report, "lagrange", label(preset.id, alpha) + " pair " + c.name + " defect ratio", ratio, kExpectedOrder,
             kOrderSlack);
      }
    }
  }
}

void wronskian_suite(VerifyReport& report, const RunSettings& settings) {
  for (const Preset& preset : presets()) {
    for (double alpha : kAlphas) {
      const Discretization disc(make_problem(preset, alpha, settings), IntegratorConfig::fractal(settings.steps));
      for (double lambda : kWronskianLambdas) {
        const std::vector<double> w = wronskian_profile(lambda, disc);
        const auto [lo, hi] = std::minmax_element(w.begin(), w.end());
        const double rel = (*hi - *lo) / (1.0 + std::fabs(characteristic(lambda, disc)));
        below(report, "wronskian", label(preset.id, alpha) + fmt(" x-variation at lambda=%.1f", lambda), rel,
              kWronskianLimit);
      }
      double worst = 0.0;
      const SolveOptions w = window(settings);
      for (int i = 1; i <= kForwardBackwardSamples; ++i) {
        const double lambda = w.lambda_min + (w.lambda_max - w.lambda_min) * i / kForwardBackwardSamples;
        const double fwd = characteristic(lambda, disc);
        const double bwd = characteristic_via_psi(lambda, disc);
        worst = std::max(worst, std::fabs(fwd - bwd) / (1.0 + std::fabs(fwd)));
      }
      below(report, "wronskian", label(preset.id, alpha) + " forward/backward Delta", worst, kForwardBackwardLimit);
    }
  }
}

void relation_suite(VerifyReport& report, const RunSettings& settings) {
  for (const Preset& preset : presets()) {
    const Discretization disc(make_problem(preset, 1.0, settings), IntegratorConfig::fractal(settings.steps));
    const SpectrumResult spectrum = solve_spectrum(window(settings), disc);
    if (spectrum.pairs.empty())
      below(report, "relation28", label(preset.id, 1.0) + " (no eigenpairs)", NAN, kRelationLimit);
    for (const Eigenpair& pair : spectrum.pairs) {
      const RelationCheck check = check_relation_2_8(pair, disc);
      below(report, "relation28", label(preset.id, 1.0) + " n=" + std::to_string(pair.index), check.defect,
            kRelationLimit);
    }
  }
}

void convergence_suite(VerifyReport& report, const RunSettings& settings) {
  for (const Preset& preset : presets()) {
    const DiracProblem problem = make_problem(preset, 1.0, settings);
    SolveOptions w = window(settings);
    w.tol = kStudyTolerance;
    const ConvergenceStudy study = convergence_study(problem, Method::FractalRK4, w, kConvergenceLevels, 1);
    for (std::size_t i = 0; i < study.observed_orders.size(); ++i) {
      const double order = study.observed_orders[i];
      const std::string name = label(preset.id, 1.0) + " lambda_1 order, steps " +
                               std::to_string(kConvergenceLevels[i]) + "-" + std::to_string(kConvergenceLevels[i + 2]);
      near(report, "convergence", name, order, kExpectedOrder, kOrderSlack);
    }
    double smallest = INFINITY;
    for (const auto& level : study.levels)
      if (level.lambda)
        smallest = std::min(smallest, std::fabs(level.slope));
    above(report, "convergence", label(preset.id, 1.0) + " min |dDelta/dlambda| across levels", smallest,
          kDegenerateSlope);
  }
}

} // namespace

TableReport run_table(int example, const RunSettings& settings) {
  const Preset& p = preset(example);
  TableReport report;
  report.example = example;

  std::vector<double> classical;
  std::vector<double> fractal_one;
  for (const ReferenceRow& ref : p.rows) {
    const double alpha = ref.alpha.value_or(1.0);
    const IntegratorConfig config = ref.alpha ? IntegratorConfig::fractal(settings.steps)
                                              : IntegratorConfig::classical(settings.steps);
    const SpectrumResult spectrum = solve_spectrum(window(settings), make_problem(p, alpha, settings), config);

    TableRow row;
    row.alpha = ref.alpha;
    const bool relative = ref.alpha && *ref.alpha < 1.0;
    const std::size_t columns = std::max(ref.eigenvalues.size(), spectrum.pairs.size());
    for (std::size_t j = 0; j < columns; ++j) {
      TableCell cell;
      cell.relative = relative;
      cell.tolerance = relative ? kRelativeCellTolerance : kAbsoluteCellTolerance;
      if (j < ref.eigenvalues.size())
        cell.expected = ref.eigenvalues[j];
      if (j < spectrum.pairs.size())
        cell.computed = spectrum.pairs[j].lambda;
      if (cell.expected && cell.computed) {
        const double err = std::fabs(*cell.computed - *cell.expected);
        cell.pass = relative ? err <= cell.tolerance * std::fabs(*cell.expected) : err <= cell.tolerance;
      } else {
        cell.pass = !cell.expected && !cell.computed;
      }
      row.pass = row.pass && cell.pass;
      row.cells.push_back(cell);
    }
    if (!spectrum.failures.empty())
      row.pass = false;
    report.pass = report.pass && row.pass;

    std::vector<double> values;
    for (const Eigenpair& pair : spectrum.pairs)
      values.push_back(pair.lambda);
    if (!ref.alpha)
      classical = values;
    else if (*ref.alpha == 1.0)
      fractal_one = values;
    report.rows.push_back(std::move(row));
  }

  for (std::size_t n = 0; n < p.published_gaps.size(); ++n) {
    GapRow gap;
    gap.n = static_cast<int>(n) + 1;
    gap.published_gap = p.published_gaps[n];
    if (n < classical.size())
      gap.classical = classical[n];
    if (n < classical.size() && n < fractal_one.size())
      gap.gap = std::fabs(classical[n] - fractal_one[n]);
    report.gaps.push_back(gap);
  }
  return report;
}

Suite parse_suite(std::string_view name) {
  for (Suite s : {Suite::Orthogonality, Suite::Lagrange, Suite::Wronskian, Suite::Relation28, Suite::Convergence,
                  Suite::All})
    if (suite_name(s) == name)
      return s;
  throw ArgumentError("unknown verification suite '" + std::string(name) +
                      "' (orthogonality, lagrange, wronskian, relation28, convergence, all)");
}

std::string_view suite_name(Suite suite) {
  switch (suite) {
  case Suite::Orthogonality:
    return "orthogonality";
  case Suite::Lagrange:
    return "lagrange";
  case Suite::Wronskian:
    return "wronskian";
  case Suite::Relation28:
    return "relation28";
  case Suite::Convergence:
    return "convergence";
  case Suite::All:
    return "all";
  }
  return "?";
}

bool VerifyReport::pass() const {
  return !checks.empty() && std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

VerifyReport run_verification(Suite suite, const RunSettings& settings) {
  VerifyReport report;
  const bool all = suite == Suite::All;
  if (all || suite == Suite::Orthogonality)
    orthogonality_suite(report, settings);
  if (all || suite == Suite::Lagrange)
    lagrange_suite(report, settings);
  if (all || suite == Suite::Wronskian)
    wronskian_suite(report, settings);
  if (all || suite == Suite::Relation28)
    relation_suite(report, settings);
  if (all || suite == Suite::Convergence)
    convergence_suite(report, settings);
  return report;
}

} // namespace fracdirac
