#ifndef FRACDIRAC_VERIFICATION_HPP
#define FRACDIRAC_VERIFICATION_HPP

#include "fracdirac/dirac_system.hpp"
#include "fracdirac/spectral.hpp"

#include <optional>
#include <string>
#include <vector>

namespace fracdirac {

struct RunSettings {
  int steps = 4096;
  int scan_points = 311;
  double tol = kDefaultTolerance;
  CoefficientArgument coefficient_argument = CoefficientArgument::Abscissa;
};

// Cell tolerances against the published tables.
inline constexpr double kAbsoluteCellTolerance = 2e-3;  // classical and alpha = 1 rows
inline constexpr double kRelativeCellTolerance = 1e-2;  // alpha < 1 rows

struct TableCell {
  std::optional<double> expected;
  std::optional<double> computed;
  double tolerance = 0.0;
  bool relative = false;
  bool pass = false;
};

struct TableRow {
  std::optional<double> alpha;  // empty: classical
  std::vector<TableCell> cells;
  bool pass = true;
};

struct GapRow {
  int n = 0;
  std::optional<double> classical;
  std::optional<double> gap;  // |classical - fractal(1.0)|
  double published_gap = 0.0;
};

struct TableReport {
  int example = 0;
  std::vector<TableRow> rows;
  std::vector<GapRow> gaps;
  bool pass = true;
};

TableReport run_table(int example, const RunSettings& settings = {});

enum class Suite { Orthogonality, Lagrange, Wronskian, Relation28, Convergence, All };

// Throws ArgumentError for unknown names.
Suite parse_suite(std::string_view name);
std::string_view suite_name(Suite suite);

// Below: value < threshold. Above: value > threshold.
// Near: |value - target| <= threshold.
enum class Comparison { Below, Above, Near };

struct CheckResult {
  std::string suite;
  std::string name;
  double value = 0.0;
  double threshold = 0.0;
  Comparison comparison = Comparison::Below;
  double target = 0.0;
  bool pass = false;
};

struct VerifyReport {
  std::vector<CheckResult> checks;
  bool pass() const;
};

// Runs the named invariant suite over the three built-in examples.
VerifyReport run_verification(Suite suite, const RunSettings& settings = {});

} // namespace fracdirac

#endif
