#ifndef FRACDIRAC_SPECTRAL_HPP
#define FRACDIRAC_SPECTRAL_HPP

#include "fracdirac/integrator.hpp"

#include <optional>
#include <string>
#include <vector>

namespace fracdirac {

// Delta(lambda) = phi2 psi1 - phi1 psi2, evaluated as -phi1(b, lambda).
double characteristic(double lambda, const Discretization& disc);
double characteristic(double lambda, const DiracProblem& problem, const IntegratorConfig& config);

// Delta(lambda) = psi1(a, lambda), from a backward sweep.
double characteristic_via_psi(double lambda, const Discretization& disc);
double characteristic_via_psi(double lambda, const DiracProblem& problem, const IntegratorConfig& config);

// phi2 psi1 - phi1 psi2 at every grid node.
std::vector<double> wronskian_profile(double lambda, const Discretization& disc);
std::vector<double> wronskian_profile(double lambda, const DiracProblem& problem, const IntegratorConfig& config);

struct CharacteristicSample {
  double lambda = 0.0;
  double delta = 0.0;
  bool ok = true;     // false when the sweep diverged
  std::string error;  // diverged samples only
};

struct Bracket {
  double lo = 0.0;
  double hi = 0.0;
};

// Delta on points equally spaced lambda values from lambda_min to lambda_max
// inclusive. Diverged samples are marked, not thrown.
std::vector<CharacteristicSample> scan_characteristic(double lambda_min, double lambda_max, int points,
                                                      const Discretization& disc);

// Adjacent sample pairs with a strict sign change, plus degenerate brackets
// [l, l] for samples where Delta is exactly zero. Ascending in lambda.
std::vector<Bracket> find_brackets(const std::vector<CharacteristicSample>& samples);

struct RefinedRoot {
  double lambda = 0.0;
  double residual = 0.0;  // |Delta(lambda)|
  int iterations = 0;
};

inline constexpr double kDefaultTolerance = 1e-9;
inline constexpr int kMaxBisections = 200;

// Bisection down to width < tol, then one secant polish inside the final
// bracket.
RefinedRoot refine_eigenvalue(const Bracket& bracket, double tol, const Discretization& disc);

struct Eigenpair {
  int index = 0;  // 1-based within the solve window
  double lambda = 0.0;
  Trajectory phi;
  double weight = 0.0;  // alpha_n
  double beta = 0.0;    // psi = beta phi
  double residual = 0.0;
  double delta_slope = 0.0;  // central difference of Delta at lambda_n
};

struct BracketFailure {
  Bracket bracket;
  std::string reason;
};

struct SpectrumResult {
  std::vector<Eigenpair> pairs;
  std::vector<BracketFailure> failures;
  std::vector<CharacteristicSample> scan;
};

struct SolveOptions {
  double lambda_min = 0.0;  // exclusive
  double lambda_max = std::numbers::pi;
  int scan_points = 311;
  double tol = kDefaultTolerance;
};

// Scan, refine every bracket and assemble eigenpairs. Only roots in the
// half-open window (lambda_min, lambda_max] are kept. Failed brackets are
// listed, never dropped.
SpectrumResult solve_spectrum(const SolveOptions& options, const Discretization& disc);
SpectrumResult solve_spectrum(const SolveOptions& options, const DiracProblem& problem, const IntegratorConfig& config);

double weight_number(const Trajectory& phi);

inline constexpr double kBetaAgreement = 1e-4;
inline constexpr double kBetaFloor = 1e-12;

struct BetaEstimate {
  double beta = 0.0;          // psi2(a, lambda_n)
  double least_squares = 0.0; // <psi, phi> / <phi, phi> over the grid nodes
};

// beta_n = psi2(a, lambda_n). Throws ConsistencyError when |beta_n| is below
// kBetaFloor or the node-wise least-squares ratio of psi to phi disagrees by
// more than kBetaAgreement.
BetaEstimate beta_constant(double lambda_n, const Discretization& disc);
BetaEstimate beta_constant(double lambda_n, const DiracProblem& problem, const IntegratorConfig& config);

inline constexpr double kSlopeStep = 1e-5;
inline constexpr double kDegenerateSlope = 1e-12;

double delta_slope(double lambda, const Discretization& disc);

struct RelationCheck {
  double defect = 0.0;      // |beta alpha - slope| / |slope|
  double beta_alpha = 0.0;
  double slope = 0.0;       // central difference of Delta
  double staircase_slope = 0.0;  // (Delta(l_n) - Delta(l_n - h)) / (S(l_n) - S(l_n - h)); NaN if l_n < h
};

// beta_n alpha_n against dDelta/dlambda at lambda_n.
RelationCheck check_relation_2_8(const Eigenpair& pair, const Discretization& disc);

// G[i][j] = <phi_i, phi_j> / sqrt(alpha_i alpha_j).
std::vector<std::vector<double>> orthogonality_matrix(const std::vector<Eigenpair>& pairs);

// Largest |G[i][j]| with i != j.
double max_off_diagonal(const std::vector<std::vector<double>>& gram);

struct ConvergenceLevel {
  int steps = 0;
  std::optional<double> lambda;  // empty if the eigenvalue was not found
  double slope = 0.0;
};

struct ConvergenceStudy {
  int index = 1;
  std::vector<ConvergenceLevel> levels;
  // log2(|l_N - l_2N| / |l_2N - l_4N|) per consecutive triple; NaN if a level
  // did not converge.
  std::vector<double> observed_orders;
};

inline constexpr double kStudyTolerance = 1e-13;

// Eigenvalue `index` (1-based in the window) at each level; levels must
// double. Throws ConvergenceError when fewer than two levels converge.
ConvergenceStudy convergence_study(const DiracProblem& problem, Method method, const SolveOptions& window,
                                   const std::vector<int>& levels, int index = 1);

// log2(e_N / e_2N) against a known exact eigenvalue; NaN where undefined.
std::vector<double> orders_against(const ConvergenceStudy& study, double exact);

} // namespace fracdirac

#endif
