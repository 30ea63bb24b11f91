#ifndef FRACDIRAC_FRACTAL_CORE_HPP
#define FRACDIRAC_FRACTAL_CORE_HPP

#include <span>
#include <vector>

namespace fracdirac {

// Order of the fractal derivative, restricted to (0, 1].
class ScalingIndex {
public:
  explicit ScalingIndex(double alpha);

  double value() const noexcept { return alpha_; }

  friend bool operator==(ScalingIndex, ScalingIndex) = default;

private:
  double alpha_;
};

// Integral staircase S_F^alpha of the underlying fractal set. Only the power
// law x^alpha is available; the kind enumeration is where a coarse-grained
// mass model would go.
class ScalingModel {
public:
  enum class Kind { PowerLaw };

  static ScalingModel power_law(double alpha) { return ScalingModel(Kind::PowerLaw, ScalingIndex(alpha)); }
  static ScalingModel identity() { return power_law(1.0); }

  Kind kind() const noexcept { return kind_; }
  ScalingIndex index() const noexcept { return index_; }
  double alpha() const noexcept { return index_.value(); }

  // S(x) for x >= 0.
  double operator()(double x) const;
  // Inverse map t -> x with S(x) = t, t >= 0.
  double inverse(double t) const;

  friend bool operator==(const ScalingModel&, const ScalingModel&) = default;

private:
  ScalingModel(Kind kind, ScalingIndex index) : kind_(kind), index_(index) {}

  Kind kind_;
  ScalingIndex index_;
};

double staircase_eval(double x, const ScalingModel& model);

// Uniform grid in x together with the cached staircase values S(x_i).
class Grid {
public:
  Grid(std::vector<double> nodes, const ScalingModel& model);

  std::span<const double> nodes() const noexcept { return nodes_; }
  std::span<const double> staircase_nodes() const noexcept { return staircase_; }
  std::size_t size() const noexcept { return nodes_.size(); }
  std::size_t steps() const noexcept { return nodes_.size() - 1; }
  double a() const noexcept { return nodes_.front(); }
  double b() const noexcept { return nodes_.back(); }
  const ScalingModel& model() const noexcept { return model_; }

  // h_F^alpha of interval i.
  double staircase_gap(std::size_t i) const { return staircase_[i + 1] - staircase_[i]; }

  friend bool operator==(const Grid& l, const Grid& r) {
    return l.model_ == r.model_ && l.nodes_ == r.nodes_;
  }

private:
  std::vector<double> nodes_;
  std::vector<double> staircase_;
  ScalingModel model_;
};

Grid make_uniform_grid(double a, double b, int steps, const ScalingModel& model);

// Composite trapezoid rule in the staircase coordinate.
double falpha_integral(const Grid& grid, std::span<const double> values);

} // namespace fracdirac

#endif
