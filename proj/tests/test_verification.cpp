#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "fracdirac/errors.hpp"
#include "fracdirac/presets.hpp"
#include "fracdirac/verification.hpp"

#include <cmath>

using namespace fracdirac;

namespace {

void report(const TableReport& t) {
  for (const TableRow& row : t.rows) {
    MESSAGE("row alpha=" << (row.alpha ? *row.alpha : -1.0) << " pass=" << row.pass);
    for (const TableCell& c : row.cells)
      MESSAGE("  expected=" << (c.expected ? *c.expected : NAN) << " computed=" << (c.computed ? *c.computed : NAN)
                            << " pass=" << c.pass);
  }
}

const TableRow& row_for(const TableReport& t, std::optional<double> alpha) {
  for (const TableRow& row : t.rows)
    if (row.alpha == alpha)
      return row;
  FAIL("row missing");
  return t.rows.front();
}

std::size_t found(const TableRow& row) {
  std::size_t n = 0;
  for (const TableCell& c : row.cells)
    n += c.computed.has_value();
  return n;
}

} // namespace

TEST_CASE("presets") {
  CHECK(presets().size() == 3);
  CHECK(preset(1).p == "1/(1+S)");
  CHECK(preset(2).r == "S^2+1");
  CHECK(preset(3).p == "exp(S)");
  CHECK_THROWS_AS(preset(4), NotFoundError);
  for (const Preset& p : presets()) {
    REQUIRE(p.rows.size() == 4);
    CHECK_FALSE(p.rows[0].alpha.has_value());
  }
}

TEST_CASE("example 1 table") {
  const TableReport t = run_table(1);
  report(t);
  CHECK(t.pass);
  CHECK(found(row_for(t, std::nullopt)) == 4);
  CHECK(found(row_for(t, 0.8)) == 3);
  for (const GapRow& gap : t.gaps) {
    REQUIRE(gap.gap.has_value());
    CHECK(*gap.gap <= 1e-9);
  }
}

TEST_CASE("example 2 table") {
  const TableReport t = run_table(2);
  report(t);
  CHECK(t.pass);
  for (const TableRow& row : t.rows)
    CHECK(found(row) == 1);
}

TEST_CASE("example 3 table") {
  const TableReport t = run_table(3);
  report(t);
  CHECK(t.pass);
  CHECK(found(row_for(t, std::nullopt)) == 6);
  CHECK(found(row_for(t, 0.9)) == 5);
  CHECK(found(row_for(t, 0.8)) == 4);
}

TEST_CASE("tables fail under the staircase binding") {
  RunSettings s;
  s.coefficient_argument = CoefficientArgument::Staircase;
  CHECK_FALSE(run_table(1, s).pass);
}

TEST_CASE("suite names") {
  CHECK(parse_suite("lagrange") == Suite::Lagrange);
  CHECK(suite_name(Suite::Relation28) == "relation28");
  CHECK_THROWS_AS(parse_suite("nope"), ArgumentError);
}

TEST_CASE("invariant suites pass") {
  const VerifyReport r = run_verification(Suite::All);
  for (const CheckResult& c : r.checks)
    if (!c.pass)
      MESSAGE(c.suite << ": " << c.name << " value=" << c.value);
  CHECK(r.pass());
  for (Suite s : {Suite::Orthogonality, Suite::Lagrange, Suite::Wronskian, Suite::Relation28, Suite::Convergence}) {
    bool any = false;
    for (const CheckResult& c : r.checks)
      any = any || c.suite == suite_name(s);
    CHECK(any);
  }
}
