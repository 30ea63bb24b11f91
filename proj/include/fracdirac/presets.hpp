#ifndef FRACDIRAC_PRESETS_HPP
#define FRACDIRAC_PRESETS_HPP

#include <optional>
#include <string>
#include <vector>

namespace fracdirac {

// One published row: a method/alpha pair and its eigenvalues, with empty
// entries where no eigenvalue lies in (0, pi].
struct ReferenceRow {
  std::optional<double> alpha;  // empty for the classical method
  std::vector<std::optional<double>> eigenvalues;
};

struct Preset {
  int id = 0;
  std::string p;
  std::string r;
  std::vector<ReferenceRow> rows;          // classical, 0.8, 0.9, 1.0
  std::vector<double> published_gaps;      // |classical - fractal(1.0)| per eigenvalue
};

const std::vector<Preset>& presets();

// Throws NotFoundError for ids other than 1, 2, 3.
const Preset& preset(int id);

} // namespace fracdirac

#endif
