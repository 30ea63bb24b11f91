#include "fracdirac/spectral.hpp"

#include "fracdirac/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace fracdirac {

namespace {

int sign_of(double v) { return (v > 0.0) - (v < 0.0); }

} // namespace

double characteristic(double lambda, const Discretization& disc) {
  return -shoot(lambda, {0.0, 1.0}, Direction::Forward, disc).f1;
}

double characteristic(double lambda, const DiracProblem& problem, const IntegratorConfig& config) {
  return characteristic(lambda, Discretization(problem, config));
}

double characteristic_via_psi(double lambda, const Discretization& disc) {
  return shoot(lambda, {0.0, 1.0}, Direction::Backward, disc).f1;
}

double characteristic_via_psi(double lambda, const DiracProblem& problem, const IntegratorConfig& config) {
  return characteristic_via_psi(lambda, Discretization(problem, config));
}

std::vector<double> wronskian_profile(double lambda, const Discretization& disc) {
  const Trajectory phi = propagate_phi(lambda, disc);
  const Trajectory psi = propagate_psi(lambda, disc);
  std::vector<double> w(phi.size());
  for (std::size_t i = 0; i < w.size(); ++i)
    w[i] = phi.states[i].f2 * psi.states[i].f1 - phi.states[i].f1 * psi.states[i].f2;
  return w;
}

std::vector<double> wronskian_profile(double lambda, const DiracProblem& problem, const IntegratorConfig& config) {
  return wronskian_profile(lambda, Discretization(problem, config));
}

std::vector<CharacteristicSample> scan_characteristic(double lambda_min, double lambda_max, int points,
                                                      const Discretization& disc) {
  if (!(lambda_min < lambda_max))
    throw ArgumentError("scan window needs lambda_min < lambda_max");
  if (points < 2)
    throw ArgumentError("a scan needs at least 2 points");
  std::vector<CharacteristicSample> samples(static_cast<std::size_t>(points));
  const int n = points - 1;
  for (int i = 0; i <= n; ++i) {
    CharacteristicSample& s = samples[i];
    s.lambda = (lambda_min * (n - i) + lambda_max * i) / n;
    try {
      s.delta = characteristic(s.lambda, disc);
    } catch (const DivergenceError& e) {
      s.ok = false;
      s.delta = std::numeric_limits<double>::quiet_NaN();
      s.error = e.what();
    }
  }
  return samples;
}

std::vector<Bracket> find_brackets(const std::vector<CharacteristicSample>& samples) {
  std::vector<Bracket> out;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto& s = samples[i];
    if (!s.ok)
      continue;
    if (s.delta == 0.0) {
      out.push_back({s.lambda, s.lambda});
      continue;
    }
    if (i + 1 < samples.size()) {
      const auto& t = samples[i + 1];
      if (t.ok && sign_of(s.delta) * sign_of(t.delta) < 0)
        out.push_back({s.lambda, t.lambda});
    }
  }
  return out;
}

RefinedRoot refine_eigenvalue(const Bracket& bracket, double tol, const Discretization& disc) {
  if (!(tol > 0.0))
    throw ArgumentError("refinement tolerance must be positive");
  double lo = bracket.lo;
  double hi = bracket.hi;
  if (lo > hi)
    throw ArgumentError("bracket bounds are reversed");
  double f_lo = characteristic(lo, disc);
  if (f_lo == 0.0 || lo == hi) {
    if (f_lo != 0.0)
      throw ArgumentError("degenerate bracket is not a root");
    return {lo, 0.0, 0};
  }
  double f_hi = characteristic(hi, disc);
  if (f_hi == 0.0)
    return {hi, 0.0, 0};
  if (sign_of(f_lo) * sign_of(f_hi) > 0)
    throw ArgumentError("bracket does not enclose a sign change of the characteristic function");

  int iterations = 0;
  while (hi - lo >= tol) {
    if (iterations >= kMaxBisections)
      throw ConvergenceError("bisection did not reach width " + std::to_string(tol) + " within " +
                             std::to_string(kMaxBisections) + " iterations");
    ++iterations;
    const double mid = lo + 0.5 * (hi - lo);
    const double f_mid = characteristic(mid, disc);
    if (f_mid == 0.0)
      return {mid, 0.0, iterations};
    if (sign_of(f_mid) == sign_of(f_lo)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
      f_hi = f_mid;
    }
  }

  const double mid = lo + 0.5 * (hi - lo);
  RefinedRoot best{mid, std::fabs(characteristic(mid, disc)), iterations};
  const double secant = lo - f_lo * (hi - lo) / (f_hi - f_lo);
  if (secant >= lo && secant <= hi) {
    const double residual = std::fabs(characteristic(secant, disc));
    if (residual < best.residual)
      best = {secant, residual, iterations};
  }
  return best;
}

double weight_number(const Trajectory& phi) {
  std::vector<double> integrand(phi.size());
  for (std::size_t i = 0; i < phi.size(); ++i)
    integrand[i] = phi.states[i].f1 * phi.states[i].f1 + phi.states[i].f2 * phi.states[i].f2;
  return falpha_integral(*phi.grid, integrand);
}

BetaEstimate beta_constant(double lambda_n, const Discretization& disc) {
  const Trajectory phi = propagate_phi(lambda_n, disc);
  const Trajectory psi = propagate_psi(lambda_n, disc);
  double cross = 0.0;
  double norm = 0.0;
  for (std::size_t i = 0; i < phi.size(); ++i) {
    cross += psi.states[i].f1 * phi.states[i].f1 + psi.states[i].f2 * phi.states[i].f2;
    norm += phi.states[i].f1 * phi.states[i].f1 + phi.states[i].f2 * phi.states[i].f2;
  }
  // phi2(a) = 1, so psi2(a) is beta directly.
  BetaEstimate est{psi.front().f2, cross / norm};
  if (!(std::fabs(est.beta) >= kBetaFloor))
    throw ConsistencyError("beta vanishes at lambda = " + std::to_string(lambda_n));
  if (!(std::fabs(est.beta - est.least_squares) <= kBetaAgreement * std::fabs(est.beta)))
    throw ConsistencyError("psi is not proportional to phi at lambda = " + std::to_string(lambda_n) +
                           " (psi2(a) = " + std::to_string(est.beta) +
                           ", least-squares ratio = " + std::to_string(est.least_squares) + ")");
  return est;
}

BetaEstimate beta_constant(double lambda_n, const DiracProblem& problem, const IntegratorConfig& config) {
  return beta_constant(lambda_n, Discretization(problem, config));
}

double delta_slope(double lambda, const Discretization& disc) {
  return (characteristic(lambda + kSlopeStep, disc) - characteristic(lambda - kSlopeStep, disc)) / (2.0 * kSlopeStep);
}

SpectrumResult solve_spectrum(const SolveOptions& options, const Discretization& disc) {
  if (!(options.tol > 0.0))
    throw ArgumentError("refinement tolerance must be positive");
  SpectrumResult result;
  result.scan = scan_characteristic(options.lambda_min, options.lambda_max, options.scan_points, disc);
  for (const Bracket& bracket : find_brackets(result.scan)) {
    try {
      const RefinedRoot root = refine_eigenvalue(bracket, options.tol, disc);
      if (!(root.lambda > options.lambda_min && root.lambda <= options.lambda_max))
        continue;
      Eigenpair pair;
      pair.lambda = root.lambda;
      pair.residual = root.residual;
      pair.phi = propagate_phi(root.lambda, disc);
      pair.weight = weight_number(pair.phi);
      pair.beta = beta_constant(root.lambda, disc).beta;
      pair.delta_slope = delta_slope(root.lambda, disc);
      result.pairs.push_back(std::move(pair));
    } catch (const Error& e) {
      result.failures.push_back({bracket, e.what()});
    }
  }
  std::sort(result.pairs.begin(), result.pairs.end(),
            [](const Eigenpair& l, const Eigenpair& r) { return l.lambda < r.lambda; });
  for (std::size_t i = 0; i < result.pairs.size(); ++i)
    result.pairs[i].index = static_cast<int>(i) + 1;
  return result;
}

SpectrumResult solve_spectrum(const SolveOptions& options, const DiracProblem& problem, const IntegratorConfig& config) {
  return solve_spectrum(options, Discretization(problem, config));
}

RelationCheck check_relation_2_8(const Eigenpair& pair, const Discretization& disc) {
  RelationCheck check;
  check.slope = delta_slope(pair.lambda, disc);
  if (std::fabs(check.slope) < kDegenerateSlope)
    throw DegenerateSlopeError("characteristic slope vanishes at lambda = " + std::to_string(pair.lambda) +
                               "; the eigenvalue would not be algebraically simple");
  check.beta_alpha = pair.beta * pair.weight;
  check.defect = std::fabs(check.beta_alpha - check.slope) / std::fabs(check.slope);

  const double behind = pair.lambda - kSlopeStep;
  if (behind >= 0.0) {
    const ScalingModel& model = disc.model();
    check.staircase_slope = (characteristic(pair.lambda, disc) - characteristic(behind, disc)) /
                            (model(pair.lambda) - model(behind));
  } else {
    check.staircase_slope = std::numeric_limits<double>::quiet_NaN();
  }
  return check;
}

std::vector<std::vector<double>> orthogonality_matrix(const std::vector<Eigenpair>& pairs) {
  if (pairs.empty())
    throw ArgumentError("orthogonality matrix needs at least one eigenpair");
  const std::size_t n = pairs.size();
  std::vector<std::vector<double>> gram(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    gram[i][i] = 1.0;
    for (std::size_t j = i + 1; j < n; ++j) {
      const double g = inner_product(pairs[i].phi, pairs[j].phi) / std::sqrt(pairs[i].weight * pairs[j].weight);
      gram[i][j] = g;
      gram[j][i] = g;
    }
  }
  return gram;
}

double max_off_diagonal(const std::vector<std::vector<double>>& gram) {
  double worst = 0.0;
  for (std::size_t i = 0; i < gram.size(); ++i)
    for (std::size_t j = 0; j < gram.size(); ++j)
      if (i != j)
        worst = std::max(worst, std::fabs(gram[i][j]));
  return worst;
}

ConvergenceStudy convergence_study(const DiracProblem& problem, Method method, const SolveOptions& window,
                                   const std::vector<int>& levels, int index) {
  if (levels.size() < 3)
    throw ArgumentError("a convergence study needs at least 3 levels");
  for (std::size_t i = 1; i < levels.size(); ++i)
    if (levels[i] != 2 * levels[i - 1])
      throw ArgumentError("convergence levels must double");
  if (index < 1)
    throw ArgumentError("eigenvalue index is 1-based");

  ConvergenceStudy study;
  study.index = index;
  int converged = 0;
  for (int steps : levels) {
    ConvergenceLevel level;
    level.steps = steps;
    const Discretization disc(problem, {method, steps});
    const SpectrumResult spectrum = solve_spectrum(window, disc);
    if (static_cast<int>(spectrum.pairs.size()) >= index) {
      const Eigenpair& pair = spectrum.pairs[index - 1];
      level.lambda = pair.lambda;
      level.slope = pair.delta_slope;
      ++converged;
    }
    study.levels.push_back(level);
  }
  if (converged < 2)
    throw ConvergenceError("fewer than two levels produced eigenvalue " + std::to_string(index));

  for (std::size_t i = 0; i + 2 < study.levels.size(); ++i) {
    const auto& l0 = study.levels[i].lambda;
    const auto& l1 = study.levels[i + 1].lambda;
    const auto& l2 = study.levels[i + 2].lambda;
    study.observed_orders.push_back(l0 && l1 && l2 ? std::log2(std::fabs(*l0 - *l1) / std::fabs(*l1 - *l2))
                                                   : std::numeric_limits<double>::quiet_NaN());
  }
  return study;
}

std::vector<double> orders_against(const ConvergenceStudy& study, double exact) {
  std::vector<double> orders;
  for (std::size_t i = 0; i + 1 < study.levels.size(); ++i) {
    const auto& l0 = study.levels[i].lambda;
    const auto& l1 = study.levels[i + 1].lambda;
    orders.push_back(l0 && l1 ? std::log2(std::fabs(*l0 - exact) / std::fabs(*l1 - exact))
                              : std::numeric_limits<double>::quiet_NaN());
  }
  return orders;
}

} // namespace fracdirac
