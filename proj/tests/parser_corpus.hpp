#ifndef FRACDIRAC_TESTS_PARSER_CORPUS_HPP
#define FRACDIRAC_TESTS_PARSER_CORPUS_HPP

#include <cmath>
#include <cstddef>
#include <functional>
#include <numbers>
#include <vector>

namespace corpus_data {

using std::numbers::e;
using std::numbers::pi;

struct OracleCase {
  const char* source;
  std::function<double(double, double)> oracle;
  double lo;  // sampling range for S (x uses the same range)
  double hi;
};

inline const std::vector<OracleCase>& corpus() {
  static const std::vector<OracleCase> cases = {
    {"1/(1+S)", [](double s, double) { return 1 / (1 + s); }, 0.0, 4.0},
    {"1/(1+S^2)", [](double s, double) { return 1 / (1 + s * s); }, -4.0, 4.0},
    {"S+1", [](double s, double) { return s + 1; }, -4.0, 4.0},
    {"S^2+1", [](double s, double) { return s * s + 1; }, -4.0, 4.0},
    {"exp(S)", [](double s, double) { return std::exp(s); }, -4.0, 4.0},
    {"exp(-S)", [](double s, double) { return std::exp(-s); }, -4.0, 4.0},
    {"sin(S)*cos(S)", [](double s, double) { return std::sin(s) * std::cos(s); }, -4.0, 4.0},
    {"tan(S/4)", [](double s, double) { return std::tan(s / 4); }, -4.0, 4.0},
    {"ln(1+S^2)", [](double s, double) { return std::log(1 + s * s); }, -4.0, 4.0},
    {"sqrt(S)", [](double s, double) { return std::sqrt(s); }, 0.0, 4.0},
    {"abs(S-1)", [](double s, double) { return std::fabs(s - 1); }, -4.0, 4.0},
    {"-S^2", [](double s, double) { return -(s * s); }, -4.0, 4.0},
    {"2^-S", [](double s, double) { return std::pow(2.0, -s); }, -4.0, 4.0},
    {"S^0.5*x", [](double s, double x) { return std::pow(s, 0.5) * x; }, 0.0, 4.0},
    {"pi*S - e", [](double s, double) { return pi * s - e; }, -4.0, 4.0},
    {"S - x - 1", [](double s, double x) { return s - x - 1; }, -4.0, 4.0},
    {"S/2/4", [](double s, double) { return s / 2 / 4; }, -4.0, 4.0},
    {"(S+1)*(S-1)/(S^2+2)", [](double s, double) { return (s + 1) * (s - 1) / (s * s + 2); }, -4.0, 4.0},
    {"exp(sin(S)) + cos(x)^2", [](double s, double x) { return std::exp(std::sin(s)) + std::pow(std::cos(x), 2); },
     -4.0, 4.0},
    {"1.5e-1*S^3 - .25*S", [](double s, double) { return 0.15 * s * s * s - 0.25 * s; }, -4.0, 4.0},
    {"sqrt(abs(S))*ln(2+x)", [](double s, double x) { return std::sqrt(std::fabs(s)) * std::log(2 + x); }, 0.0,
     4.0},
    {"--S", [](double s, double) { return s; }, -4.0, 4.0},
    {"x^S", [](double s, double x) { return std::pow(x, s); }, 0.5, 4.0},
  };
  return cases;
}

struct MalformedCase {
  const char* source;
  std::size_t offset;
};

inline const std::vector<MalformedCase>& malformed() {
  static const std::vector<MalformedCase> cases = {
    {"", 0},     {"   ", 3},     {"1+", 2},    {"(1+S", 4},   {"S)", 1},       {"foo(S)", 0},
    {"2*y", 2},  {"sin S", 4},   {"S S", 2},   {"1e999", 0},  {"3 + @", 4},    {"sin(S", 5},
  };
  return cases;
}

} // namespace corpus_data

#endif
