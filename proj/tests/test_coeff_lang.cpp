#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "fracdirac/coeff_lang.hpp"
#include "fracdirac/errors.hpp"
#include "parser_corpus.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <string>
#include <vector>

using namespace fracdirac;
using corpus_data::corpus;
using corpus_data::malformed;
using std::numbers::e;
using std::numbers::pi;

namespace {

double eval(const char* src, double s, double x = 0.0) {
  return eval_coefficient(parse_coefficient(src), s, x);
}

std::size_t parse_offset(const char* src) {
  try {
    parse_coefficient(src);
  } catch (const ParseError& err) {
    return err.offset();
  }
  FAIL("expected a parse error for '" << src << "'");
  return 0;
}

void check_close(double got, double want) {
  const double scale = std::max(1.0, std::fabs(want));
  CHECK(std::fabs(got - want) <= 1e-12 * scale);
}

} // namespace

TEST_CASE("evaluation examples") {
  CHECK(eval("1/(1+S)", 1.0) == 0.5);
  CHECK(eval("S^2+1", 2.0) == 5.0);
  CHECK(eval("exp(-S)", 0.0) == 1.0);
  CHECK(eval("2^3^2", 0.0) == 512.0);
  CHECK(eval("1/(1+S^2)", 1.0) == 0.5);
  // 30-digit oracle: exp(pi^0.8)
  CHECK(eval("exp(S)", std::pow(pi, 0.8)) == doctest::Approx(12.16707171544222137).epsilon(1e-14));
  CHECK_THROWS_AS(eval("1/(1+S)", -1.0), EvaluationError);
}

TEST_CASE("precedence and associativity") {
  CHECK(eval("-2^2", 0.0) == -4.0);
  CHECK(eval("2^-1", 0.0) == 0.5);
  CHECK(eval("1-2-3", 0.0) == -4.0);
  CHECK(eval("8/4/2", 0.0) == 1.0);
  CHECK(eval("2+3*4", 0.0) == 14.0);
  CHECK(eval("(2+3)*4", 0.0) == 20.0);
  CHECK(eval("  S *\t2 ", 3.0) == 6.0);
  CHECK(eval("pi", 0.0) == pi);
  CHECK(eval("e", 0.0) == e);
  CHECK(eval("x", 0.0, 7.0) == 7.0);
}

TEST_CASE("oracle corpus at random points") {
  REQUIRE(corpus().size() >= 20);
  std::mt19937_64 rng(20261018);
  for (const corpus_data::OracleCase& c : corpus()) {
    INFO("expression: " << c.source);
    const CoefficientExpr expr = parse_coefficient(c.source);
    std::uniform_real_distribution<double> dist(c.lo, c.hi);
    for (int i = 0; i < 100; ++i) {
      const double s = dist(rng);
      const double x = dist(rng);
      check_close(eval_coefficient(expr, s, x), c.oracle(s, x));
    }
  }
}

TEST_CASE("canonical text round-trips") {
  for (const corpus_data::OracleCase& c : corpus()) {
    INFO("expression: " << c.source);
    const CoefficientExpr first = parse_coefficient(c.source);
    const std::string text = first.to_string();
    INFO("canonical: " << text);
    const CoefficientExpr second = parse_coefficient(text);
    CHECK(structurally_equal(first, second));
    CHECK(second.to_string() == text);
  }
}

TEST_CASE("evaluation is pure") {
  const CoefficientExpr expr = parse_coefficient("exp(sin(S))/(1+x^2)");
  const double first = eval_coefficient(expr, 0.7, 1.3);
  eval_coefficient(expr, 2.0, -1.0);
  CHECK(eval_coefficient(expr, 0.7, 1.3) == first);
  const CoefficientExpr copy = expr;
  CHECK(eval_coefficient(copy, 0.7, 1.3) == first);
}

TEST_CASE("malformed input reports the offset") {
  for (const auto& c : malformed()) {
    INFO(c.source);
    CHECK(parse_offset(c.source) == c.offset);
  }

  try {
    parse_coefficient("1 + wat");
    FAIL("no error");
  } catch (const ParseError& err) {
    CHECK(err.offset() == 4);
    CHECK(err.message().find("wat") != std::string::npos);
    CHECK(std::string(err.what()).rfind("at offset 4: ", 0) == 0);
    CHECK(err.kind() == ErrorKind::Parse);
  }
}

TEST_CASE("evaluation errors name the operation") {
  auto message = [](const char* src, double s) -> std::string {
    try {
      eval(src, s);
    } catch (const EvaluationError& err) {
      return err.what();
    }
    return "";
  };
  CHECK(message("1/(1+S)", -1.0).find("division") != std::string::npos);
  CHECK(message("ln(S)", 0.0).find("ln") != std::string::npos);
  CHECK(message("sqrt(S)", -1.0).find("sqrt") != std::string::npos);
  CHECK(message("exp(S)", 1000.0) != "");
  CHECK_NOTHROW(eval("ln(S)", 1.0));
  CHECK_NOTHROW(eval("sqrt(S)", 0.0));
}

TEST_CASE("differentiation in S") {
  struct DerivCase {
    const char* source;
    std::function<double(double)> derivative;
  };
  const DerivCase cases[] = {
    {"S^2+1", [](double s) { return 2 * s; }},
    {"1/(1+S)", [](double s) { return -1 / ((1 + s) * (1 + s)); }},
    {"1/(1+S^2)", [](double s) { return -2 * s / ((1 + s * s) * (1 + s * s)); }},
    {"exp(-S)", [](double s) { return -std::exp(-s); }},
    {"sin(S)*cos(2*S)",
     [](double s) { return std::cos(s) * std::cos(2 * s) - 2 * std::sin(s) * std::sin(2 * s); }},
    {"S^pi", [](double s) { return pi * std::pow(s, pi - 1); }},
    {"pi*e - S", [](double) { return -1.0; }},
    {"7", [](double) { return 0.0; }},
  };
  for (const DerivCase& c : cases) {
    INFO("expression: " << c.source);
    const CoefficientExpr d = differentiate_in_s(parse_coefficient(c.source));
    for (double s : {0.3, 0.9, 1.7, 2.9})
      check_close(eval_coefficient(d, s, 0.0), c.derivative(s));
  }

  CHECK_THROWS_AS(differentiate_in_s(parse_coefficient("x*S")), CapabilityError);
  CHECK_THROWS_AS(differentiate_in_s(parse_coefficient("ln(S)")), CapabilityError);
  CHECK_THROWS_AS(differentiate_in_s(parse_coefficient("sqrt(S)")), CapabilityError);
  CHECK_THROWS_AS(differentiate_in_s(parse_coefficient("abs(S)")), CapabilityError);
  CHECK_THROWS_AS(differentiate_in_s(parse_coefficient("tan(S)")), CapabilityError);
  CHECK_THROWS_AS(differentiate_in_s(parse_coefficient("2^S")), CapabilityError);
  CHECK_THROWS_AS(differentiate_in_s(CoefficientExpr{}), ArgumentError);
}
