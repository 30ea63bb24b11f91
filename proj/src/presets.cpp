#include "fracdirac/presets.hpp"

#include "fracdirac/errors.hpp"

namespace fracdirac {

namespace {

constexpr std::nullopt_t none = std::nullopt;

std::vector<Preset> build() {
  std::vector<Preset> out;

  out.push_back({1,
                 "1/(1+S)",
                 "1/(1+S^2)",
                 {
                   {none, {0.347524, 1.176747, 2.055970, 3.020643}},
                   {0.8, {0.413400, 1.438434, 2.566015, none}},
                   {0.9, {0.378385, 1.301643, 2.296227, none}},
                   {1.0, {0.347685, 1.176925, 2.056040, 3.020692}},
                 },
                 {1.61e-4, 1.78e-4, 7.00e-5, 4.90e-5}});

  out.push_back({2,
                 "S+1",
                 "S^2+1",
                 {
                   {none, {1.544759}},
                   {0.8, {1.516625}},
                   {0.9, {1.530339}},
                   {1.0, {1.544186}},
                 },
                 {5.73e-4}});

  out.push_back({3,
                 "exp(S)",
                 "exp(-S)",
                 {
                   {none, {0.148677, 0.458639, 0.865004, 1.452401, 2.170184, 2.965759}},
                   {0.8, {0.210897, 0.644622, 1.301299, 2.201887, none, none}},
                   {0.9, {0.175896, 0.542309, 1.057334, 1.790641, 2.656072, none}},
                   {1.0, {0.148792, 0.458986, 0.865601, 1.453235, 2.171232, 2.966991}},
                 },
                 {1.15e-4, 3.47e-4, 5.97e-4, 8.34e-4, 1.05e-3, 1.23e-3}});
  return out;
}

} // namespace

const std::vector<Preset>& presets() {
  static const std::vector<Preset> all = build();
  return all;
}

const Preset& preset(int id) {
  for (const Preset& p : presets())
    if (p.id == id)
      return p;
  throw NotFoundError("no built-in example " + std::to_string(id) + " (expected 1, 2 or 3)");
}

} // namespace fracdirac
