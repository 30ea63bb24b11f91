// Command-line front end. Uses only the C interface of libfracdirac.

#include "fracdirac/fracdirac.h"

#include "CLI11.hpp"
#include "json.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <system_error>
#include <unistd.h>
#include <vector>

using json = nlohmann::ordered_json;

namespace {

// Exit codes.
constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitNotFound = 4;

struct CliError {
  int code;
  std::string message;
};

int exit_code_for(fd_status status) {
  switch (status) {
  case FD_OK:
    return kExitOk;
  case FD_ERR_ARGUMENT:
  case FD_ERR_DOMAIN:
  case FD_ERR_PARSE:
    return kExitUsage;
  case FD_ERR_NOT_FOUND:
    return kExitNotFound;
  default:
    return kExitNumerical;
  }
}

void check(fd_status status, const std::string& context) {
  if (status == FD_OK)
    return;
  std::string message = context + ": " + fd_status_name(status) + ": " + fd_last_error();
  throw CliError{exit_code_for(status), message};
}

template <class T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};

using Problem = std::unique_ptr<fd_problem, Deleter<fd_problem, fd_problem_free>>;
using Spectrum = std::unique_ptr<fd_spectrum, Deleter<fd_spectrum, fd_spectrum_free>>;
using Table = std::unique_ptr<fd_table, Deleter<fd_table, fd_table_free>>;
using Verify = std::unique_ptr<fd_verify, Deleter<fd_verify, fd_verify_free>>;
using Expr = std::unique_ptr<fd_expr, Deleter<fd_expr, fd_expr_free>>;

// ---- configuration ---------------------------------------------------------

struct RunConfig {
  std::string command;
  std::string p;
  std::string r;
  std::vector<double> alpha{1.0};
  std::array<double, 2> window{0.0, std::numbers::pi};
  int steps = 4096;
  int scan_points = 311;
  double tol = 1e-9;
  std::string method = "fractal";
  std::string coeff_arg = "abscissa";
  std::string format = "human";
  std::optional<std::string> out;
  std::optional<int> example;
  int index = 1;
  std::string suite = "all";
  bool verbose = false;
};

json to_json(const RunConfig& c) {
  json j;
  j["command"] = c.command;
  j["p"] = c.p;
  j["r"] = c.r;
  j["alpha"] = c.alpha;
  j["window"] = c.window;
  j["steps"] = c.steps;
  j["scan_points"] = c.scan_points;
  j["tol"] = c.tol;
  j["method"] = c.method;
  j["coeff_arg"] = c.coeff_arg;
  j["format"] = c.format;
  j["out"] = c.out ? json(*c.out) : json(nullptr);
  j["example"] = c.example ? json(*c.example) : json(nullptr);
  j["index"] = c.index;
  j["suite"] = c.suite;
  j["verbose"] = c.verbose;
  return j;
}

// Options given on the command line; everything else may come from --config.
struct Given {
  bool p = false, r = false, alpha = false, window = false, steps = false, scan_points = false, tol = false,
       method = false, coeff_arg = false, format = false, out = false, example = false, index = false,
       suite = false, verbose = false;
};

void apply_file(RunConfig& c, const json& j, const Given& g) {
  if (!j.is_object())
    throw CliError{kExitUsage, "config file must hold a JSON object"};
  for (const auto& [key, value] : j.items()) {
    try {
      if (key == "command") {
        if (c.command.empty())
          c.command = value.get<std::string>();
      } else if (key == "p") {
        if (!g.p)
          c.p = value.get<std::string>();
      } else if (key == "r") {
        if (!g.r)
          c.r = value.get<std::string>();
      } else if (key == "alpha") {
        if (!g.alpha)
          c.alpha = value.get<std::vector<double>>();
      } else if (key == "window") {
        if (!g.window)
          c.window = value.get<std::array<double, 2>>();
      } else if (key == "steps") {
        if (!g.steps)
          c.steps = value.get<int>();
      } else if (key == "scan_points") {
        if (!g.scan_points)
          c.scan_points = value.get<int>();
      } else if (key == "tol") {
        if (!g.tol)
          c.tol = value.get<double>();
      } else if (key == "method") {
        if (!g.method)
          c.method = value.get<std::string>();
      } else if (key == "coeff_arg") {
        if (!g.coeff_arg)
          c.coeff_arg = value.get<std::string>();
      } else if (key == "format") {
        if (!g.format)
          c.format = value.get<std::string>();
      } else if (key == "out") {
        if (!g.out)
          c.out = value.is_null() ? std::nullopt : std::optional<std::string>(value.get<std::string>());
      } else if (key == "example") {
        if (!g.example)
          c.example = value.is_null() ? std::nullopt : std::optional<int>(value.get<int>());
      } else if (key == "index") {
        if (!g.index)
          c.index = value.get<int>();
      } else if (key == "suite") {
        if (!g.suite)
          c.suite = value.get<std::string>();
      } else if (key == "verbose") {
        if (!g.verbose)
          c.verbose = value.get<bool>();
      } else {
        throw CliError{kExitUsage, "config file: unknown key '" + key + "'"};
      }
    } catch (const json::exception& e) {
      throw CliError{kExitUsage, "config file: bad value for '" + key + "': " + e.what()};
    }
  }
}

void validate(RunConfig& c) {
  static const std::vector<std::string> commands = {"solve", "scan", "table", "eigenfunction", "verify"};
  if (c.command.empty())
    throw CliError{kExitUsage, "no command given (solve, scan, table, eigenfunction, verify)"};
  if (std::find(commands.begin(), commands.end(), c.command) == commands.end())
    throw CliError{kExitUsage, "unknown command '" + c.command + "'"};
  if (c.alpha.empty())
    throw CliError{kExitUsage, "--alpha needs at least one value"};
  for (double a : c.alpha)
    if (!(a > 0.0 && a <= 1.0))
      throw CliError{kExitUsage, "alpha values must lie in (0, 1]"};
  if (!(c.window[0] < c.window[1]))
    throw CliError{kExitUsage, "--window needs MIN < MAX"};
  if (!(c.tol > 0.0))
    throw CliError{kExitUsage, "--tol must be positive"};
  if (c.steps < 2)
    throw CliError{kExitUsage, "--steps must be at least 2"};
  if (c.scan_points < 2)
    throw CliError{kExitUsage, "--scan-points must be at least 2"};
  if (c.method != "fractal" && c.method != "classical")
    throw CliError{kExitUsage, "--method must be fractal or classical"};
  if (c.coeff_arg != "abscissa" && c.coeff_arg != "staircase")
    throw CliError{kExitUsage, "--coeff-arg must be abscissa or staircase"};
  if (c.format != "human" && c.format != "csv" && c.format != "json")
    throw CliError{kExitUsage, "--format must be human, csv or json"};
  if (c.example && (*c.example < 1 || *c.example > 3))
    throw CliError{kExitUsage, "--example must be 1, 2 or 3"};
  if (c.index < 1)
    throw CliError{kExitUsage, "--index is 1-based"};

  const bool needs_problem = c.command == "solve" || c.command == "scan" || c.command == "eigenfunction";
  if (needs_problem && c.example && c.p.empty() && c.r.empty()) {
    const char* p = nullptr;
    const char* r = nullptr;
    check(fd_preset(*c.example, &p, &r), "--example");
    c.p = p;
    c.r = r;
  }
  if (needs_problem && (c.p.empty() || c.r.empty()))
    throw CliError{kExitUsage, c.command + " needs --p and --r (or --example)"};
  if (c.command == "table" && !c.example)
    throw CliError{kExitUsage, "table needs --example 1|2|3"};
  if (needs_problem) {
    for (const std::string* src : {&c.p, &c.r}) {
      fd_expr* raw = nullptr;
      const fd_status st = fd_expr_parse(src->c_str(), &raw);
      Expr guard(raw);
      if (st != FD_OK) {
        const long offset = fd_last_error_offset();
        std::string msg = std::string(src == &c.p ? "--p" : "--r") + ": " + fd_last_error();
        if (offset >= 0)
          msg += "\n  " + *src + "\n  " + std::string(static_cast<std::size_t>(offset), ' ') + "^";
        throw CliError{kExitUsage, msg};
      }
    }
  }
}

// ---- formatting helpers ----------------------------------------------------

std::string num(const char* pattern, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, pattern, v);
  return buf;
}

// Shortest text that reads back to the same double.
std::string exact(double v) {
  if (std::isnan(v))
    return "nan";
  for (int precision = 1; precision <= 17; ++precision) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.*g", precision, v);
    if (std::strtod(buf, nullptr) == v)
      return buf;
  }
  return num("%.17g", v);
}

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos)
    return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"')
      out += '"';
    out += ch;
  }
  return out + "\"";
}

std::string csv_row(const std::vector<std::string>& fields) {
  std::string line;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i)
      line += ',';
    line += csv_field(fields[i]);
  }
  return line + "\n";
}

// Left-aligned columns separated by two spaces.
std::string align(const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width;
  for (const auto& row : rows)
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (width.size() <= i)
        width.push_back(0);
      width[i] = std::max(width[i], row[i].size());
    }
  std::string out;
  for (const auto& row : rows) {
    std::string line;
    for (std::size_t i = 0; i < row.size(); ++i) {
      line += row[i];
      if (i + 1 < row.size())
        line += std::string(width[i] - row[i].size() + 2, ' ');
    }
    while (!line.empty() && line.back() == ' ')
      line.pop_back();
    out += line + "\n";
  }
  return out;
}

std::string alpha_label(double alpha) { return exact(alpha); }

// ---- problem plumbing ------------------------------------------------------

fd_problem_desc describe(const RunConfig& c, double alpha) {
  fd_problem_desc d;
  fd_problem_desc_init(&d);
  d.p = c.p.c_str();
  d.r = c.r.c_str();
  d.alpha = alpha;
  d.steps = c.steps;
  d.method = c.method == "classical" ? FD_METHOD_CLASSICAL : FD_METHOD_FRACTAL;
  d.coefficient_argument = c.coeff_arg == "staircase" ? FD_COEFF_STAIRCASE : FD_COEFF_ABSCISSA;
  return d;
}

Problem make_problem(const RunConfig& c, double alpha) {
  const fd_problem_desc d = describe(c, alpha);
  fd_problem* raw = nullptr;
  check(fd_problem_create(&d, &raw), "alpha " + alpha_label(alpha));
  return Problem(raw);
}

fd_solve_options solve_options(const RunConfig& c) {
  fd_solve_options o;
  fd_solve_options_init(&o);
  o.lambda_min = c.window[0];
  o.lambda_max = c.window[1];
  o.scan_points = c.scan_points;
  o.tol = c.tol;
  return o;
}

fd_run_settings run_settings(const RunConfig& c) {
  fd_run_settings s;
  fd_run_settings_init(&s);
  s.steps = c.steps;
  s.scan_points = c.scan_points;
  s.tol = c.tol;
  s.coefficient_argument = c.coeff_arg == "staircase" ? FD_COEFF_STAIRCASE : FD_COEFF_ABSCISSA;
  return s;
}

std::vector<double> sorted_alphas(const RunConfig& c) {
  std::vector<double> a = c.alpha;
  std::sort(a.begin(), a.end());
  return a;
}

json problem_json(const RunConfig& c) {
  return json{{"p", c.p},
              {"r", c.r},
              {"a", 0.0},
              {"b", std::numbers::pi},
              {"method", c.method},
              {"coeff_arg", c.coeff_arg},
              {"window", c.window}};
}

json meta_json(const RunConfig& c) {
  return json{{"steps", c.steps}, {"scan_points", c.scan_points}, {"tol", c.tol}, {"version", fd_version()}};
}

std::string header_line(const RunConfig& c) {
  return "# p = " + c.p + ", r = " + c.r + ", method " + c.method + ", window (" + exact(c.window[0]) + ", " +
         exact(c.window[1]) + "], steps " + std::to_string(c.steps) + ", tol " + exact(c.tol) + "\n";
}

struct Outcome {
  int code = kExitOk;
  std::string text;                                       // stdout or --out
  std::vector<std::pair<std::string, std::string>> files; // replaces text when non-empty
};

// ---- solve -----------------------------------------------------------------

struct SolvedRow {
  double alpha;
  std::vector<fd_eigen_info> eigen;
};

// Solves one alpha; any failed bracket is a numerical failure.
Spectrum solve_checked(const RunConfig& c, const fd_problem* problem, double alpha) {
  const fd_solve_options options = solve_options(c);
  fd_spectrum* raw = nullptr;
  check(fd_solve(problem, &options, &raw), "alpha " + alpha_label(alpha));
  Spectrum spectrum(raw);
  const std::size_t failures = fd_spectrum_failure_count(spectrum.get());
  if (failures) {
    std::string msg = "alpha " + alpha_label(alpha) + ": " + std::to_string(failures) + " bracket(s) failed";
    for (std::size_t i = 0; i < failures; ++i) {
      double lo = 0, hi = 0;
      const char* reason = "";
      check(fd_spectrum_failure(spectrum.get(), i, &lo, &hi, &reason), "failure");
      msg += "\n  [" + exact(lo) + ", " + exact(hi) + "]: " + reason;
    }
    throw CliError{kExitNumerical, msg};
  }
  return spectrum;
}

std::vector<SolvedRow> solve_rows(const RunConfig& c) {
  std::vector<SolvedRow> rows;
  for (double alpha : sorted_alphas(c)) {
    Problem problem = make_problem(c, alpha);
    Spectrum spectrum = solve_checked(c, problem.get(), alpha);
    SolvedRow row{alpha, {}};
    for (std::size_t i = 0; i < fd_spectrum_count(spectrum.get()); ++i) {
      fd_eigen_info info;
      check(fd_spectrum_get(spectrum.get(), i, &info), "eigenpair");
      row.eigen.push_back(info);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

Outcome cmd_solve(const RunConfig& c) {
  const std::vector<SolvedRow> rows = solve_rows(c);
  Outcome out;
  bool any = false;
  for (const SolvedRow& row : rows)
    any = any || !row.eigen.empty();
  if (!any)
    throw CliError{kExitNotFound, "no eigenvalue found in the window"};

  if (c.format == "json") {
    json arr = json::array();
    for (const SolvedRow& row : rows) {
      json eig = json::array();
      for (const fd_eigen_info& e : row.eigen)
        eig.push_back({{"index", e.index},
                       {"lambda", e.lambda},
                       {"weight", e.weight},
                       {"beta", e.beta},
                       {"residual", e.residual}});
      arr.push_back({{"problem", problem_json(c)}, {"alpha", row.alpha}, {"eigenvalues", eig}, {"meta", meta_json(c)}});
    }
    out.text = arr.dump(2) + "\n";
  } else if (c.format == "csv") {
    out.text = csv_row({"method", "alpha", "index", "lambda", "weight", "beta", "residual"});
    for (const SolvedRow& row : rows)
      for (const fd_eigen_info& e : row.eigen)
        out.text += csv_row({c.method, exact(row.alpha), std::to_string(e.index), exact(e.lambda), exact(e.weight),
                             exact(e.beta), exact(e.residual)});
  } else {
    std::size_t columns = 0;
    for (const SolvedRow& row : rows)
      columns = std::max(columns, row.eigen.size());
    std::vector<std::vector<std::string>> table;
    std::vector<std::string> head = {"method", "alpha"};
    for (std::size_t j = 1; j <= columns; ++j)
      head.push_back("lambda_" + std::to_string(j));
    table.push_back(head);
    for (const SolvedRow& row : rows) {
      std::vector<std::string> line = {c.method, alpha_label(row.alpha)};
      for (std::size_t j = 0; j < columns; ++j)
        line.push_back(j < row.eigen.size() ? num("%.6f", row.eigen[j].lambda) : "-");
      table.push_back(line);
    }
    out.text = header_line(c) + align(table);
    if (c.verbose) {
      std::vector<std::vector<std::string>> detail = {{"alpha", "n", "lambda", "weight", "beta", "residual"}};
      for (const SolvedRow& row : rows)
        for (const fd_eigen_info& e : row.eigen)
          detail.push_back({alpha_label(row.alpha), std::to_string(e.index), num("%.10f", e.lambda),
                            num("%.10f", e.weight), num("%.10f", e.beta), num("%.3e", e.residual)});
      out.text += "\n" + align(detail);
    }
  }
  return out;
}

// ---- scan ------------------------------------------------------------------

struct ScanRow {
  double alpha;
  std::vector<double> lambda;
  std::vector<double> delta;
  std::vector<int> ok;
  std::vector<double> lo;
  std::vector<double> hi;
};

Outcome cmd_scan(const RunConfig& c) {
  std::vector<ScanRow> rows;
  for (double alpha : sorted_alphas(c)) {
    Problem problem = make_problem(c, alpha);
    ScanRow row{alpha, {}, {}, {}, {}, {}};
    const auto n = static_cast<std::size_t>(c.scan_points);
    row.lambda.resize(n);
    row.delta.resize(n);
    row.ok.resize(n);
    check(fd_scan(problem.get(), c.window[0], c.window[1], c.scan_points, row.lambda.data(), row.delta.data(),
                  row.ok.data()),
          "alpha " + alpha_label(alpha));
    std::size_t count = 0;
    check(fd_find_brackets(row.lambda.data(), row.delta.data(), row.ok.data(), c.scan_points, nullptr, nullptr, 0,
                           &count),
          "brackets");
    row.lo.resize(count);
    row.hi.resize(count);
    check(fd_find_brackets(row.lambda.data(), row.delta.data(), row.ok.data(), c.scan_points, row.lo.data(),
                           row.hi.data(), count, &count),
          "brackets");
    rows.push_back(std::move(row));
  }

  // Bracket number (1-based) starting at each sample, 0 for none.
  auto starts = [](const ScanRow& row) {
    std::vector<std::size_t> mark(row.lambda.size(), 0);
    std::size_t s = 0;
    for (std::size_t b = 0; b < row.lo.size(); ++b) {
      while (s < row.lambda.size() && row.lambda[s] != row.lo[b])
        ++s;
      if (s < row.lambda.size())
        mark[s] = b + 1;
    }
    return mark;
  };

  Outcome out;
  if (c.format == "json") {
    json arr = json::array();
    for (const ScanRow& row : rows) {
      json samples = json::array();
      for (std::size_t i = 0; i < row.lambda.size(); ++i)
        samples.push_back({{"lambda", row.lambda[i]}, {"delta", number_or_null(row.delta[i])}, {"ok", row.ok[i] != 0}});
      json brackets = json::array();
      for (std::size_t b = 0; b < row.lo.size(); ++b)
        brackets.push_back({{"lo", row.lo[b]}, {"hi", row.hi[b]}});
      arr.push_back({{"problem", problem_json(c)},
                     {"alpha", row.alpha},
                     {"samples", samples},
                     {"brackets", brackets},
                     {"meta", meta_json(c)}});
    }
    out.text = arr.dump(2) + "\n";
  } else if (c.format == "csv") {
    out.text = csv_row({"alpha", "lambda", "delta", "ok", "bracket"});
    for (const ScanRow& row : rows) {
      const auto mark = starts(row);
      for (std::size_t i = 0; i < row.lambda.size(); ++i)
        out.text += csv_row({exact(row.alpha), exact(row.lambda[i]), row.ok[i] ? exact(row.delta[i]) : "",
                             row.ok[i] ? "1" : "0", mark[i] ? std::to_string(mark[i]) : ""});
    }
  } else {
    out.text = header_line(c);
    for (const ScanRow& row : rows) {
      out.text += "\nalpha " + alpha_label(row.alpha) + ": " + std::to_string(row.lo.size()) + " bracket(s)\n";
      for (std::size_t b = 0; b < row.lo.size(); ++b)
        out.text += "  bracket " + std::to_string(b + 1) + ": [" + num("%.6f", row.lo[b]) + ", " +
                    num("%.6f", row.hi[b]) + "]\n";
      const auto mark = starts(row);
      std::vector<std::vector<std::string>> table = {{"lambda", "Delta", ""}};
      for (std::size_t i = 0; i < row.lambda.size(); ++i)
        table.push_back({num("%.6f", row.lambda[i]), row.ok[i] ? num("% .6e", row.delta[i]) : "diverged",
                         mark[i] ? "<- bracket " + std::to_string(mark[i]) : ""});
      out.text += align(table);
    }
  }
  return out;
}

// ---- table -----------------------------------------------------------------

Outcome cmd_table(const RunConfig& c) {
  const fd_run_settings settings = run_settings(c);
  fd_table* raw = nullptr;
  check(fd_table_run(*c.example, &settings, &raw), "table");
  Table table(raw);
  const bool pass = fd_table_pass(table.get()) != 0;

  struct Row {
    double alpha;
    bool pass;
    std::vector<fd_table_cell> cells;
  };
  std::vector<Row> rows;
  for (std::size_t i = 0; i < fd_table_row_count(table.get()); ++i) {
    Row row{};
    std::size_t cells = 0;
    int row_pass = 0;
    check(fd_table_row(table.get(), i, &row.alpha, &cells, &row_pass), "table row");
    row.pass = row_pass != 0;
    for (std::size_t j = 0; j < cells; ++j) {
      fd_table_cell cell;
      check(fd_table_cell_get(table.get(), i, j, &cell), "table cell");
      row.cells.push_back(cell);
    }
    rows.push_back(std::move(row));
  }
  std::vector<fd_table_gap> gaps;
  for (std::size_t i = 0; i < fd_table_gap_count(table.get()); ++i) {
    fd_table_gap g;
    check(fd_table_gap_get(table.get(), i, &g), "gap");
    gaps.push_back(g);
  }
  auto method = [](const Row& r) { return std::isnan(r.alpha) ? std::string("classical") : std::string("fractal"); };
  auto alpha_text = [](const Row& r) { return std::isnan(r.alpha) ? std::string("-") : num("%.1f", r.alpha); };

  Outcome out;
  out.code = pass ? kExitOk : kExitFailed;
  if (c.format == "json") {
    json jrows = json::array();
    for (const Row& r : rows) {
      json cells = json::array();
      for (std::size_t j = 0; j < r.cells.size(); ++j) {
        const fd_table_cell& cell = r.cells[j];
        cells.push_back({{"n", j + 1},
                         {"expected", cell.has_expected ? json(cell.expected) : json(nullptr)},
                         {"computed", cell.has_computed ? json(cell.computed) : json(nullptr)},
                         {"tolerance", cell.tolerance},
                         {"relative", cell.relative != 0},
                         {"pass", cell.pass != 0}});
      }
      jrows.push_back({{"method", method(r)},
                       {"alpha", std::isnan(r.alpha) ? json(nullptr) : json(r.alpha)},
                       {"pass", r.pass},
                       {"cells", cells}});
    }
    json jgaps = json::array();
    for (const fd_table_gap& g : gaps)
      jgaps.push_back({{"n", g.n},
                       {"classical", g.has_classical ? json(g.classical) : json(nullptr)},
                       {"gap", g.has_gap ? json(g.gap) : json(nullptr)},
                       {"published_gap", g.published_gap}});
    json doc = {{"example", *c.example}, {"pass", pass}, {"rows", jrows}, {"gaps", jgaps}, {"meta", meta_json(c)}};
    out.text = doc.dump(2) + "\n";
  } else if (c.format == "csv") {
    out.text = csv_row({"example", "kind", "method", "alpha", "n", "expected", "computed", "tolerance", "pass"});
    const std::string ex = std::to_string(*c.example);
    for (const Row& r : rows)
      for (std::size_t j = 0; j < r.cells.size(); ++j) {
        const fd_table_cell& cell = r.cells[j];
        const std::string tol = cell.relative ? exact(cell.tolerance) + " rel" : exact(cell.tolerance);
        out.text += csv_row({ex, "cell", method(r), std::isnan(r.alpha) ? "" : alpha_text(r), std::to_string(j + 1),
                             cell.has_expected ? exact(cell.expected) : "", cell.has_computed ? exact(cell.computed) : "",
                             tol, cell.pass ? "PASS" : "FAIL"});
      }
    for (const fd_table_gap& g : gaps)
      out.text += csv_row({ex, "gap", "", "1.0", std::to_string(g.n), exact(g.published_gap),
                           g.has_gap ? exact(g.gap) : "", "", ""});
  } else {
    std::size_t columns = 0;
    for (const Row& r : rows)
      columns = std::max(columns, r.cells.size());
    std::vector<std::vector<std::string>> t;
    std::vector<std::string> head = {"method", "alpha", ""};
    for (std::size_t j = 1; j <= columns; ++j)
      head.push_back("lambda_" + std::to_string(j));
    head.push_back("row");
    t.push_back(head);
    for (const Row& r : rows) {
      std::vector<std::string> computed = {method(r), alpha_text(r), "computed"};
      std::vector<std::string> expected = {"", "", "expected"};
      std::vector<std::string> verdict = {"", "", ""};
      for (std::size_t j = 0; j < columns; ++j) {
        if (j < r.cells.size()) {
          const fd_table_cell& cell = r.cells[j];
          computed.push_back(cell.has_computed ? num("%.6f", cell.computed) : "-");
          expected.push_back(cell.has_expected ? num("%.6f", cell.expected) : "-");
          verdict.push_back(cell.pass ? "PASS" : "FAIL");
        } else {
          computed.push_back("-");
          expected.push_back("-");
          verdict.push_back("");
        }
      }
      computed.push_back(r.pass ? "PASS" : "FAIL");
      t.push_back(computed);
      t.push_back(expected);
      t.push_back(verdict);
    }
    const char* p = nullptr;
    const char* r = nullptr;
    check(fd_preset(*c.example, &p, &r), "example");
    out.text = "Example " + std::to_string(*c.example) + ": p = " + p + ", r = " + r + ", steps " +
               std::to_string(c.steps) + ", window (0, pi]\n";
    out.text += "Tolerances: 2e-3 absolute (classical, alpha = 1.0), 1% relative (alpha < 1)\n\n";
    out.text += align(t);
    std::vector<std::vector<std::string>> g = {{"n", "classical", "|classical - fractal(1.0)|", "published"}};
    for (const fd_table_gap& gap : gaps)
      g.push_back({std::to_string(gap.n), gap.has_classical ? num("%.6f", gap.classical) : "-",
                   gap.has_gap ? num("%.3e", gap.gap) : "-", num("%.2e", gap.published_gap)});
    out.text += "\nDifference between methods at alpha = 1.0 (reference only)\n" + align(g);
    out.text += std::string("\nResult: ") + (pass ? "PASS" : "FAIL") + "\n";
  }
  return out;
}

// ---- eigenfunction ---------------------------------------------------------

struct Eigenfunction {
  double alpha;
  double lambda;
  std::vector<double> x, s, f1, f2;
};

std::string render_eigenfunction(const RunConfig& c, const Eigenfunction& e, bool with_alpha) {
  if (c.format == "json") {
    json doc = {{"problem", problem_json(c)}, {"alpha", e.alpha}, {"index", c.index}, {"lambda", e.lambda},
                {"x", e.x},                   {"S", e.s},         {"f1", e.f1},       {"f2", e.f2},
                {"meta", meta_json(c)}};
    return doc.dump(2) + "\n";
  }
  std::string text;
  if (c.format == "csv") {
    if (with_alpha)
      for (std::size_t i = 0; i < e.x.size(); ++i)
        text += csv_row({exact(e.alpha), exact(e.x[i]), exact(e.s[i]), exact(e.f1[i]), exact(e.f2[i])});
    else
      for (std::size_t i = 0; i < e.x.size(); ++i)
        text += csv_row({exact(e.x[i]), exact(e.s[i]), exact(e.f1[i]), exact(e.f2[i])});
    return text;
  }
  text = "# alpha " + alpha_label(e.alpha) + ", n = " + std::to_string(c.index) + ", lambda = " +
         num("%.10f", e.lambda) + "\n";
  std::vector<std::vector<std::string>> t = {{"x", "S", "f1", "f2"}};
  for (std::size_t i = 0; i < e.x.size(); ++i)
    t.push_back({num("%.10f", e.x[i]), num("%.10f", e.s[i]), num("% .10e", e.f1[i]), num("% .10e", e.f2[i])});
  return text + align(t);
}

Outcome cmd_eigenfunction(const RunConfig& c) {
  std::vector<Eigenfunction> found;
  for (double alpha : sorted_alphas(c)) {
    Problem problem = make_problem(c, alpha);
    Spectrum spectrum = solve_checked(c, problem.get(), alpha);
    const std::size_t count = fd_spectrum_count(spectrum.get());
    if (static_cast<std::size_t>(c.index) > count)
      throw CliError{kExitNotFound, "alpha " + alpha_label(alpha) + ": eigenvalue " + std::to_string(c.index) +
                                      " not found (" + std::to_string(count) + " in the window)"};
    Eigenfunction e;
    e.alpha = alpha;
    fd_eigen_info info;
    check(fd_spectrum_get(spectrum.get(), c.index - 1, &info), "eigenpair");
    e.lambda = info.lambda;
    const std::size_t n = fd_problem_node_count(problem.get());
    e.x.resize(n);
    e.s.resize(n);
    e.f1.resize(n);
    e.f2.resize(n);
    check(fd_problem_nodes(problem.get(), e.x.data(), e.s.data()), "nodes");
    check(fd_spectrum_eigenfunction(spectrum.get(), c.index - 1, e.f1.data(), e.f2.data()), "eigenfunction");
    found.push_back(std::move(e));
  }

  Outcome out;
  const bool several = found.size() > 1;
  if (c.out && several) {
    const std::filesystem::path base(*c.out);
    for (const Eigenfunction& e : found) {
      std::filesystem::path file = base.parent_path() /
                                   (base.stem().string() + "_alpha" + alpha_label(e.alpha) + base.extension().string());
      std::string text = c.format == "csv" ? csv_row({"x", "S", "f1", "f2"}) : "";
      out.files.emplace_back(file.string(), text + render_eigenfunction(c, e, false));
    }
    return out;
  }
  if (c.format == "json" && several) {
    json arr = json::array();
    for (const Eigenfunction& e : found)
      arr.push_back(json::parse(render_eigenfunction(c, e, false)));
    out.text = arr.dump(2) + "\n";
  } else if (c.format == "csv") {
    out.text = several ? csv_row({"alpha", "x", "S", "f1", "f2"}) : csv_row({"x", "S", "f1", "f2"});
    for (const Eigenfunction& e : found)
      out.text += render_eigenfunction(c, e, several);
  } else {
    for (std::size_t i = 0; i < found.size(); ++i)
      out.text += (i ? "\n" : "") + render_eigenfunction(c, found[i], false);
  }
  return out;
}

// ---- verify ----------------------------------------------------------------

Outcome cmd_verify(const RunConfig& c) {
  const fd_run_settings settings = run_settings(c);
  fd_verify* raw = nullptr;
  check(fd_verify_run(c.suite.c_str(), &settings, &raw), "verify");
  Verify report(raw);
  const bool pass = fd_verify_pass(report.get()) != 0;
  std::vector<fd_check> checks;
  for (std::size_t i = 0; i < fd_verify_count(report.get()); ++i) {
    fd_check ch;
    check(fd_verify_check(report.get(), i, &ch), "check");
    checks.push_back(ch);
  }
  auto relation = [](const fd_check& ch) {
    switch (ch.comparison) {
    case FD_BELOW:
      return "< " + exact(ch.threshold);
    case FD_ABOVE:
      return "> " + exact(ch.threshold);
    case FD_NEAR:
      return exact(ch.target) + " +- " + exact(ch.threshold);
    }
    return std::string("?");
  };
  auto comparison = [](fd_comparison k) {
    return k == FD_BELOW ? "below" : k == FD_ABOVE ? "above" : "near";
  };

  Outcome out;
  out.code = pass ? kExitOk : kExitFailed;
  if (c.format == "json") {
    json arr = json::array();
    for (const fd_check& ch : checks)
      arr.push_back({{"suite", ch.suite},
                     {"name", ch.name},
                     {"value", number_or_null(ch.value)},
                     {"comparison", comparison(ch.comparison)},
                     {"threshold", ch.threshold},
                     {"target", ch.target},
                     {"pass", ch.pass != 0}});
    out.text = json{{"suite", c.suite}, {"pass", pass}, {"checks", arr}, {"meta", meta_json(c)}}.dump(2) + "\n";
  } else if (c.format == "csv") {
    out.text = csv_row({"suite", "name", "value", "comparison", "threshold", "target", "pass"});
    for (const fd_check& ch : checks)
      out.text += csv_row({ch.suite, ch.name, exact(ch.value), comparison(ch.comparison), exact(ch.threshold),
                           exact(ch.target), ch.pass ? "PASS" : "FAIL"});
  } else {
    std::vector<std::vector<std::string>> t = {{"result", "suite", "check", "value", "criterion"}};
    for (const fd_check& ch : checks)
      t.push_back({ch.pass ? "PASS" : "FAIL", ch.suite, ch.name, num("%.3e", ch.value), relation(ch)});
    std::size_t failed = 0;
    for (const fd_check& ch : checks)
      failed += ch.pass ? 0 : 1;
    out.text = align(t) + "\n" + std::to_string(checks.size() - failed) + "/" + std::to_string(checks.size()) +
               " checks passed: " + (pass ? "PASS" : "FAIL") + "\n";
  }
  return out;
}

// ---- output ----------------------------------------------------------------

// Writes to a sibling temporary file and renames it over the target.
void write_atomic(const std::string& path, const std::string& text) {
  const std::filesystem::path target(path);
  std::filesystem::path tmp = target;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f)
      throw CliError{kExitUsage, "cannot write '" + tmp.string() + "'"};
    f << text;
    f.flush();
    if (!f) {
      std::error_code ec;
      std::filesystem::remove(tmp, ec);
      throw CliError{kExitUsage, "cannot write '" + tmp.string() + "'"};
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, target, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw CliError{kExitUsage, "cannot move output into place at '" + path + "'"};
  }
}

Outcome run(const RunConfig& c) {
  if (c.command == "solve")
    return cmd_solve(c);
  if (c.command == "scan")
    return cmd_scan(c);
  if (c.command == "table")
    return cmd_table(c);
  if (c.command == "eigenfunction")
    return cmd_eigenfunction(c);
  return cmd_verify(c);
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral solver for one-dimensional Dirac systems on fractal staircases", "fracdirac-cli"};
  app.set_version_flag("--version", std::string(fd_version()));
  app.require_subcommand(0, 1);

  RunConfig cfg;
  std::string config_path;
  std::string dump_path;
  std::vector<double> alpha;
  std::vector<double> window;
  std::string out_path;
  int example = 0;

  auto* o_p = app.add_option("--p", cfg.p, "Coefficient p as a formula in S (and x)");
  auto* o_r = app.add_option("--r", cfg.r, "Coefficient r as a formula in S (and x)");
  auto* o_alpha = app.add_option("--alpha", alpha, "Staircase orders in (0, 1], comma separated")->delimiter(',');
  auto* o_window = app.add_option("--window", window, "Eigenvalue window MIN,MAX (MIN exclusive)")->delimiter(',');
  auto* o_steps = app.add_option("--steps", cfg.steps, "Grid steps");
  auto* o_scan = app.add_option("--scan-points", cfg.scan_points, "Scan samples of the characteristic function");
  auto* o_tol = app.add_option("--tol", cfg.tol, "Bracket width at which bisection stops");
  auto* o_method = app.add_option("--method", cfg.method, "fractal | classical");
  auto* o_coeff =
    app.add_option("--coeff-arg", cfg.coeff_arg, "What S means in p and r: abscissa (x) | staircase (x^alpha)");
  auto* o_format = app.add_option("--format", cfg.format, "human | csv | json");
  auto* o_out = app.add_option("--out", out_path, "Output file (written atomically)");
  auto* o_example = app.add_option("--example", example, "Built-in example 1 | 2 | 3");
  auto* o_index = app.add_option("--index", cfg.index, "Eigenvalue index for eigenfunction (1-based)");
  auto* o_suite = app.add_option("--suite", cfg.suite,
                                 "orthogonality | lagrange | wronskian | relation28 | convergence | all");
  auto* o_verbose = app.add_flag("-v,--verbose", cfg.verbose, "Weight numbers, norming constants and residuals");
  app.add_option("--config", config_path, "JSON run configuration; flags override it");
  app.add_option("--dump-config", dump_path, "Write the effective configuration as JSON");

  const std::vector<std::pair<std::string, std::string>> commands = {
    {"solve", "Eigenvalues in the window for each alpha"},
    {"scan", "Samples of the characteristic function with sign-change brackets"},
    {"table", "Reproduce a built-in example table and compare with the reference values"},
    {"eigenfunction", "Columns x, S(x), f1, f2 of eigenfunction --index"},
    {"verify", "Invariant checks over the built-in examples"},
  };
  for (const auto& [name, help] : commands)
    app.add_subcommand(name, help)->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    for (const auto* sub : app.get_subcommands())
      cfg.command = sub->get_name();
    if (!alpha.empty())
      cfg.alpha = alpha;
    if (o_window->count()) {
      if (window.size() != 2)
        throw CliError{kExitUsage, "--window expects MIN,MAX"};
      cfg.window = {window[0], window[1]};
    }
    if (o_out->count())
      cfg.out = out_path;
    if (o_example->count())
      cfg.example = example;

    const Given given{o_p->count() > 0,      o_r->count() > 0,      o_alpha->count() > 0,  o_window->count() > 0,
                      o_steps->count() > 0,  o_scan->count() > 0,   o_tol->count() > 0,    o_method->count() > 0,
                      o_coeff->count() > 0,  o_format->count() > 0, o_out->count() > 0,    o_example->count() > 0,
                      o_index->count() > 0,  o_suite->count() > 0,  o_verbose->count() > 0};
    if (!config_path.empty()) {
      std::ifstream f(config_path);
      if (!f)
        throw CliError{kExitUsage, "cannot read config file '" + config_path + "'"};
      json j;
      try {
        j = json::parse(f);
      } catch (const json::exception& e) {
        throw CliError{kExitUsage, "config file '" + config_path + "': " + e.what()};
      }
      apply_file(cfg, j, given);
    }

    validate(cfg);
    if (!dump_path.empty())
      write_atomic(dump_path, to_json(cfg).dump(2) + "\n");

    Outcome outcome = run(cfg);
    if (!outcome.files.empty()) {
      for (const auto& [path, text] : outcome.files)
        write_atomic(path, text);
    } else if (cfg.out) {
      write_atomic(*cfg.out, outcome.text);
    } else {
      std::cout << outcome.text << std::flush;
    }
    return outcome.code;
  } catch (const CliError& e) {
    std::cerr << "fracdirac-cli: " << e.message << "\n";
    return e.code;
  }
}
