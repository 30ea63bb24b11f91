#ifndef FRACDIRAC_DIRAC_SYSTEM_HPP
#define FRACDIRAC_DIRAC_SYSTEM_HPP

#include "fracdirac/coeff_lang.hpp"
#include "fracdirac/fractal_core.hpp"

#include <memory>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

namespace fracdirac {

// What the variable S of a coefficient formula receives at abscissa x.
//   Abscissa:  S := x. The staircase enters only through the integration
//              step h_F = S(x_{n+1}) - S(x_n). This is the convention under
//              which the published example tables were computed.
//   Staircase: S := S_F^alpha(x), the literal reading of p(S_F^alpha(x)).
// Both coincide at alpha = 1.
enum class CoefficientArgument { Abscissa, Staircase };

struct State2 {
  double f1 = 0.0;
  double f2 = 0.0;

  State2& operator+=(const State2& o) {
    f1 += o.f1;
    f2 += o.f2;
    return *this;
  }
  friend State2 operator+(State2 l, const State2& r) { return l += r; }
  friend State2 operator*(double c, const State2& s) { return {c * s.f1, c * s.f2}; }
  friend bool operator==(const State2&, const State2&) = default;
};

// p and r sampled at one abscissa.
struct CoefficientSample {
  double p = 0.0;
  double r = 0.0;
};

// The boundary value problem
//   D f2 - p f1 = lambda f1,  -D f1 + r f2 = lambda f2,  f1(a) = f1(b) = 0
// with D the F^alpha derivative. Immutable once built.
class DiracProblem {
public:
  struct Options {
    double a = 0.0;
    double b = std::numbers::pi;
    double alpha = 1.0;
    int steps = 4096;
    CoefficientArgument coefficient_argument = CoefficientArgument::Abscissa;
  };

  DiracProblem(std::string p_source, std::string r_source, const Options& options);
  DiracProblem(std::string p_source, std::string r_source) : DiracProblem(std::move(p_source), std::move(r_source), Options{}) {}

  double a() const noexcept { return options_.a; }
  double b() const noexcept { return options_.b; }
  int steps() const noexcept { return options_.steps; }
  double alpha() const noexcept { return options_.alpha; }
  const ScalingModel& model() const noexcept { return model_; }
  CoefficientArgument coefficient_argument() const noexcept { return options_.coefficient_argument; }
  const Options& options() const noexcept { return options_; }
  const CoefficientExpr& p() const noexcept { return p_; }
  const CoefficientExpr& r() const noexcept { return r_; }
  const std::string& p_source() const noexcept { return p_source_; }
  const std::string& r_source() const noexcept { return r_source_; }

  // Same coefficients on the same interval with another staircase order.
  DiracProblem with_alpha(double alpha) const;

  // Coefficients at abscissa x, evaluated under the given staircase model.
  CoefficientSample coefficients_at(double x, const ScalingModel& model) const;
  CoefficientSample coefficients_at(double x) const { return coefficients_at(x, model_); }

private:
  std::string p_source_;
  std::string r_source_;
  CoefficientExpr p_;
  CoefficientExpr r_;
  Options options_;
  ScalingModel model_;
};

// phi, psi and eigenfunctions sampled on a grid.
struct Trajectory {
  std::shared_ptr<const Grid> grid;
  std::vector<State2> states;
  double lambda = 0.0;

  std::size_t size() const noexcept { return states.size(); }
  const State2& front() const { return states.front(); }
  const State2& back() const { return states.back(); }
};

// Derivatives with respect to the staircase coordinate:
//   df1/dS = (r - lambda) f2,  df2/dS = (lambda + p) f1.
State2 rhs(double x, const State2& state, double lambda, const DiracProblem& problem);

// Same system with coefficients already sampled.
inline State2 rhs(const CoefficientSample& c, const State2& state, double lambda) {
  return {(c.r - lambda) * state.f2, (lambda + c.p) * state.f1};
}

// A pair (f1, f2) given analytically in S, for identity checks.
struct AnalyticPair {
  CoefficientExpr f1;
  CoefficientExpr f2;

  static AnalyticPair parse(std::string_view f1, std::string_view f2) {
    return {parse_coefficient(f1), parse_coefficient(f2)};
  }
};

// (D f2 - p f1, -D f1 + r f2) on the grid, using D g(S) = g'(S).
std::pair<std::vector<double>, std::vector<double>> apply_operator(const AnalyticPair& f, const DiracProblem& problem,
                                                                   const Grid& grid);

double inner_product(const Trajectory& u, const Trajectory& v);

// |<Lf, g> - <f, Lg> - [f2 g1 - f1 g2]_a^b| with both inner products
// evaluated by quadrature on the grid.
double lagrange_defect(const AnalyticPair& f, const AnalyticPair& g, const DiracProblem& problem, const Grid& grid);

// Trajectory holding analytic values of a pair, for use with inner_product.
Trajectory sample_pair(const AnalyticPair& f, std::shared_ptr<const Grid> grid);

} // namespace fracdirac

#endif
