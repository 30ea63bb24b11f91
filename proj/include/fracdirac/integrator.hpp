#ifndef FRACDIRAC_INTEGRATOR_HPP
#define FRACDIRAC_INTEGRATOR_HPP

#include "fracdirac/dirac_system.hpp"

#include <memory>
#include <vector>

namespace fracdirac {

enum class Method { FractalRK4, ClassicalRK4 };

struct IntegratorConfig {
  Method method = Method::FractalRK4;
  int steps = 4096;

  static IntegratorConfig fractal(int steps = 4096) { return {Method::FractalRK4, steps}; }
  static IntegratorConfig classical(int steps = 4096) { return {Method::ClassicalRK4, steps}; }

  void validate() const;
};

// One fractal RK4 step from x_n to x_next (either direction). The stage
// abscissa for k2 and k3 is the staircase midpoint S(x_n) + h/2 mapped back
// through the inverse staircase.
State2 frk4_step(double x_n, double x_next, const State2& y_n, double lambda, const DiracProblem& problem);

// Shared step kernel on pre-sampled coefficients; h is the staircase
// increment and may be negative.
State2 rk4_kernel(const State2& y, double lambda, double h, const CoefficientSample& start,
                  const CoefficientSample& mid, const CoefficientSample& end);

// A problem bound to a grid, with p and r sampled once at every node and at
// every stage midpoint. Lambda-independent, so one instance serves a whole
// spectral solve. Read-only after construction.
class Discretization {
public:
  Discretization(const DiracProblem& problem, const IntegratorConfig& config);

  const DiracProblem& problem() const noexcept { return problem_; }
  const IntegratorConfig& config() const noexcept { return config_; }
  const std::shared_ptr<const Grid>& grid() const noexcept { return grid_; }
  // S(x) = x for the classical method.
  const ScalingModel& model() const noexcept { return grid_->model(); }

  const CoefficientSample& node_coefficients(std::size_t i) const { return nodes_[i]; }
  const CoefficientSample& mid_coefficients(std::size_t interval) const { return mids_[interval]; }

private:
  DiracProblem problem_;
  IntegratorConfig config_;
  std::shared_ptr<const Grid> grid_;
  std::vector<CoefficientSample> nodes_;
  std::vector<CoefficientSample> mids_;
};

// phi(., lambda): forward sweep from (0, 1) at a.
Trajectory propagate_phi(double lambda, const Discretization& disc);
Trajectory propagate_phi(double lambda, const DiracProblem& problem, const IntegratorConfig& config);

// psi(., lambda): backward sweep from (0, 1) at b, stored in ascending x.
Trajectory propagate_psi(double lambda, const Discretization& disc);
Trajectory propagate_psi(double lambda, const DiracProblem& problem, const IntegratorConfig& config);

enum class Direction { Forward, Backward };

// General sweep from an arbitrary state at a (Forward) or b (Backward).
Trajectory propagate(double lambda, const State2& start, Direction direction, const Discretization& disc);

// Endpoint of a sweep without storing the trajectory.
State2 shoot(double lambda, const State2& start, Direction direction, const Discretization& disc);

} // namespace fracdirac

#endif
