#include "fracdirac/fractal_core.hpp"

#include "fracdirac/errors.hpp"

#include <cmath>
#include <string>

namespace fracdirac {

ScalingIndex::ScalingIndex(double alpha) : alpha_(alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0))
    throw ArgumentError("scaling index must lie in (0, 1], got " + std::to_string(alpha));
}

double ScalingModel::operator()(double x) const {
  if (!(x >= 0.0))
    throw DomainError("staircase function is defined for x >= 0, got " + std::to_string(x));
  const double alpha = index_.value();
  if (alpha == 1.0)
    return x;
  return std::pow(x, alpha);
}

double ScalingModel::inverse(double t) const {
  if (!(t >= 0.0))
    throw DomainError("inverse staircase is defined for t >= 0, got " + std::to_string(t));
  const double alpha = index_.value();
  if (alpha == 1.0)
    return t;
  return std::pow(t, 1.0 / alpha);
}

double staircase_eval(double x, const ScalingModel& model) { return model(x); }

Grid::Grid(std::vector<double> nodes, const ScalingModel& model)
  : nodes_(std::move(nodes)), model_(model) {
  if (nodes_.size() < 2)
    throw ArgumentError("a grid needs at least two nodes");
  for (std::size_t i = 1; i < nodes_.size(); ++i)
    if (!(nodes_[i] > nodes_[i - 1]))
      throw ArgumentError("grid nodes must be strictly increasing");
  staircase_.reserve(nodes_.size());
  for (double x : nodes_)
    staircase_.push_back(model_(x));
}

Grid make_uniform_grid(double a, double b, int steps, const ScalingModel& model) {
  if (!(a < b))
    throw ArgumentError("grid endpoints must satisfy a < b");
  if (steps < 1)
    throw ArgumentError("grid needs at least one step");
  std::vector<double> nodes(static_cast<std::size_t>(steps) + 1);
  // Interpolate from both ends so the last node is b exactly.
  for (int i = 0; i <= steps; ++i)
    nodes[i] = (a * (steps - i) + b * i) / steps;
  nodes.front() = a;
  nodes.back() = b;
  return Grid(std::move(nodes), model);
}

double falpha_integral(const Grid& grid, std::span<const double> values) {
  if (values.size() != grid.size())
    throw ArgumentError("integrand has " + std::to_string(values.size()) + " samples, grid has " +
                        std::to_string(grid.size()) + " nodes");
  const auto s = grid.staircase_nodes();
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < values.size(); ++i)
    sum += 0.5 * (values[i] + values[i + 1]) * (s[i + 1] - s[i]);
  return sum;
}

} // namespace fracdirac
