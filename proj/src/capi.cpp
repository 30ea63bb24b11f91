#include "fracdirac/fracdirac.h"

#include "fracdirac/errors.hpp"
#include "fracdirac/presets.hpp"
#include "fracdirac/spectral.hpp"
#include "fracdirac/verification.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>
#include <memory>
#include <new>
#include <numbers>
#include <string>

using namespace fracdirac;

struct fd_expr {
  CoefficientExpr expr;
};

struct fd_problem {
  std::shared_ptr<const Discretization> disc;
};

struct fd_spectrum {
  std::shared_ptr<const Discretization> disc;
  SpectrumResult result;
};

struct fd_table {
  TableReport report;
};

struct fd_verify {
  VerifyReport report;
};

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

thread_local std::string g_last_error;
thread_local long g_last_offset = -1;

fd_status status_of(ErrorKind kind) {
  switch (kind) {
  case ErrorKind::Argument:
    return FD_ERR_ARGUMENT;
  case ErrorKind::Domain:
    return FD_ERR_DOMAIN;
  case ErrorKind::Parse:
    return FD_ERR_PARSE;
  case ErrorKind::Evaluation:
    return FD_ERR_EVALUATION;
  case ErrorKind::Capability:
    return FD_ERR_CAPABILITY;
  case ErrorKind::Divergence:
    return FD_ERR_DIVERGENCE;
  case ErrorKind::Convergence:
    return FD_ERR_CONVERGENCE;
  case ErrorKind::Consistency:
    return FD_ERR_CONSISTENCY;
  case ErrorKind::DegenerateSlope:
    return FD_ERR_DEGENERATE_SLOPE;
  case ErrorKind::NotFound:
    return FD_ERR_NOT_FOUND;
  }
  return FD_ERR_INTERNAL;
}

fd_status fail(fd_status status, const std::string& message, long offset = -1) {
  g_last_error = message;
  g_last_offset = offset;
  return status;
}

// Runs fn, translating exceptions into status codes.
template <class Fn>
fd_status guarded(Fn&& fn) noexcept {
  try {
    fn();
    return FD_OK;
  } catch (const ParseError& e) {
    return fail(FD_ERR_PARSE, e.what(), static_cast<long>(e.offset()));
  } catch (const Error& e) {
    return fail(status_of(e.kind()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(FD_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(FD_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(FD_ERR_INTERNAL, "unknown exception");
  }
}

void require(const void* p, const char* what) {
  if (!p)
    throw ArgumentError(std::string(what) + " must not be NULL");
}

void require_index(size_t i, size_t n, const char* what) {
  if (i >= n)
    throw NotFoundError(std::string(what) + " index " + std::to_string(i) + " out of range (" + std::to_string(n) +
                        " available)");
}

RunSettings settings_from(const fd_run_settings* s) {
  RunSettings out;
  if (s) {
    out.steps = s->steps;
    out.scan_points = s->scan_points;
    out.tol = s->tol;
    out.coefficient_argument =
      s->coefficient_argument == FD_COEFF_STAIRCASE ? CoefficientArgument::Staircase : CoefficientArgument::Abscissa;
  }
  return out;
}

SolveOptions options_from(const fd_solve_options* o) {
  SolveOptions out;
  if (o) {
    out.lambda_min = o->lambda_min;
    out.lambda_max = o->lambda_max;
    out.scan_points = o->scan_points;
    out.tol = o->tol;
  }
  return out;
}

DiracProblem problem_from(const fd_problem_desc* d) {
  require(d, "problem description");
  require(d->p, "coefficient p");
  require(d->r, "coefficient r");
  DiracProblem::Options o;
  o.a = d->a;
  o.b = d->b;
  o.alpha = d->alpha;
  o.steps = d->steps;
  o.coefficient_argument =
    d->coefficient_argument == FD_COEFF_STAIRCASE ? CoefficientArgument::Staircase : CoefficientArgument::Abscissa;
  return DiracProblem(d->p, d->r, o);
}

Method method_from(fd_method m) { return m == FD_METHOD_CLASSICAL ? Method::ClassicalRK4 : Method::FractalRK4; }

void copy_states(const Trajectory& t, double* f1, double* f2) {
  for (size_t i = 0; i < t.size(); ++i) {
    if (f1)
      f1[i] = t.states[i].f1;
    if (f2)
      f2[i] = t.states[i].f2;
  }
}

} // namespace

extern "C" {

const char* fd_version(void) { return FRACDIRAC_VERSION; }

const char* fd_status_name(fd_status status) {
  switch (status) {
  case FD_OK:
    return "ok";
  case FD_ERR_ARGUMENT:
    return "argument error";
  case FD_ERR_DOMAIN:
    return "domain error";
  case FD_ERR_PARSE:
    return "parse error";
  case FD_ERR_EVALUATION:
    return "evaluation error";
  case FD_ERR_CAPABILITY:
    return "capability error";
  case FD_ERR_DIVERGENCE:
    return "divergence";
  case FD_ERR_CONVERGENCE:
    return "convergence failure";
  case FD_ERR_CONSISTENCY:
    return "consistency error";
  case FD_ERR_DEGENERATE_SLOPE:
    return "degenerate slope";
  case FD_ERR_NOT_FOUND:
    return "not found";
  case FD_ERR_INTERNAL:
    return "internal error";
  }
  return "unknown status";
}

const char* fd_last_error(void) { return g_last_error.c_str(); }

long fd_last_error_offset(void) { return g_last_offset; }

fd_status fd_expr_parse(const char* source, fd_expr** out) {
  return guarded([&] {
    require(source, "source");
    require(out, "out");
    *out = new fd_expr{parse_coefficient(source)};
  });
}

fd_status fd_expr_eval(const fd_expr* expr, double s_value, double x_value, double* out) {
  return guarded([&] {
    require(expr, "expr");
    require(out, "out");
    *out = eval_coefficient(expr->expr, s_value, x_value);
  });
}

fd_status fd_expr_canonical(const fd_expr* expr, char* buf, size_t cap, size_t* needed) {
  return guarded([&] {
    require(expr, "expr");
    const std::string text = expr->expr.to_string();
    if (needed)
      *needed = text.size();
    if (buf && cap > 0) {
      const size_t n = std::min(cap - 1, text.size());
      std::memcpy(buf, text.data(), n);
      buf[n] = '\0';
    }
  });
}

void fd_expr_free(fd_expr* expr) { delete expr; }

void fd_problem_desc_init(fd_problem_desc* desc) {
  if (!desc)
    return;
  desc->p = nullptr;
  desc->r = nullptr;
  desc->a = 0.0;
  desc->b = std::numbers::pi;
  desc->alpha = 1.0;
  desc->steps = 4096;
  desc->method = FD_METHOD_FRACTAL;
  desc->coefficient_argument = FD_COEFF_ABSCISSA;
}

fd_status fd_problem_create(const fd_problem_desc* desc, fd_problem** out) {
  return guarded([&] {
    require(out, "out");
    const DiracProblem problem = problem_from(desc);
    auto disc = std::make_shared<const Discretization>(problem, IntegratorConfig{method_from(desc->method), desc->steps});
    *out = new fd_problem{std::move(disc)};
  });
}

void fd_problem_free(fd_problem* problem) { delete problem; }

size_t fd_problem_node_count(const fd_problem* problem) { return problem ? problem->disc->grid()->size() : 0; }

fd_status fd_problem_nodes(const fd_problem* problem, double* x, double* s) {
  return guarded([&] {
    require(problem, "problem");
    const Grid& grid = *problem->disc->grid();
    for (size_t i = 0; i < grid.size(); ++i) {
      if (x)
        x[i] = grid.nodes()[i];
      if (s)
        s[i] = grid.staircase_nodes()[i];
    }
  });
}

fd_status fd_characteristic(const fd_problem* problem, double lambda, double* out) {
  return guarded([&] {
    require(problem, "problem");
    require(out, "out");
    *out = characteristic(lambda, *problem->disc);
  });
}

fd_status fd_characteristic_via_psi(const fd_problem* problem, double lambda, double* out) {
  return guarded([&] {
    require(problem, "problem");
    require(out, "out");
    *out = characteristic_via_psi(lambda, *problem->disc);
  });
}

fd_status fd_wronskian_profile(const fd_problem* problem, double lambda, double* out) {
  return guarded([&] {
    require(problem, "problem");
    require(out, "out");
    const std::vector<double> w = wronskian_profile(lambda, *problem->disc);
    std::copy(w.begin(), w.end(), out);
  });
}

fd_status fd_propagate_phi(const fd_problem* problem, double lambda, double* f1, double* f2) {
  return guarded([&] {
    require(problem, "problem");
    copy_states(propagate_phi(lambda, *problem->disc), f1, f2);
  });
}

fd_status fd_propagate_psi(const fd_problem* problem, double lambda, double* f1, double* f2) {
  return guarded([&] {
    require(problem, "problem");
    copy_states(propagate_psi(lambda, *problem->disc), f1, f2);
  });
}

fd_status fd_scan(const fd_problem* problem, double lambda_min, double lambda_max, int points, double* lambdas,
                  double* deltas, int* ok) {
  return guarded([&] {
    require(problem, "problem");
    const auto samples = scan_characteristic(lambda_min, lambda_max, points, *problem->disc);
    for (size_t i = 0; i < samples.size(); ++i) {
      if (lambdas)
        lambdas[i] = samples[i].lambda;
      if (deltas)
        deltas[i] = samples[i].delta;
      if (ok)
        ok[i] = samples[i].ok ? 1 : 0;
    }
  });
}

fd_status fd_find_brackets(const double* lambdas, const double* deltas, const int* ok, int points, double* lo,
                           double* hi, size_t capacity, size_t* count) {
  return guarded([&] {
    require(lambdas, "lambdas");
    require(deltas, "deltas");
    if (points < 0)
      throw ArgumentError("negative sample count");
    std::vector<CharacteristicSample> samples(static_cast<size_t>(points));
    for (int i = 0; i < points; ++i)
      samples[i] = {lambdas[i], deltas[i], ok ? ok[i] != 0 : std::isfinite(deltas[i]), {}};
    const auto brackets = find_brackets(samples);
    if (count)
      *count = brackets.size();
    for (size_t i = 0; i < brackets.size() && i < capacity; ++i) {
      if (lo)
        lo[i] = brackets[i].lo;
      if (hi)
        hi[i] = brackets[i].hi;
    }
  });
}

void fd_solve_options_init(fd_solve_options* options) {
  if (!options)
    return;
  const SolveOptions defaults;
  options->lambda_min = defaults.lambda_min;
  options->lambda_max = defaults.lambda_max;
  options->scan_points = defaults.scan_points;
  options->tol = defaults.tol;
}

fd_status fd_solve(const fd_problem* problem, const fd_solve_options* options, fd_spectrum** out) {
  return guarded([&] {
    require(problem, "problem");
    require(out, "out");
    auto spectrum = std::make_unique<fd_spectrum>();
    spectrum->disc = problem->disc;
    spectrum->result = solve_spectrum(options_from(options), *problem->disc);
    *out = spectrum.release();
  });
}

void fd_spectrum_free(fd_spectrum* spectrum) { delete spectrum; }

size_t fd_spectrum_count(const fd_spectrum* spectrum) { return spectrum ? spectrum->result.pairs.size() : 0; }

fd_status fd_spectrum_get(const fd_spectrum* spectrum, size_t i, fd_eigen_info* out) {
  return guarded([&] {
    require(spectrum, "spectrum");
    require(out, "out");
    require_index(i, spectrum->result.pairs.size(), "eigenpair");
    const Eigenpair& p = spectrum->result.pairs[i];
    *out = {p.index, p.lambda, p.weight, p.beta, p.residual, p.delta_slope};
  });
}

fd_status fd_spectrum_eigenfunction(const fd_spectrum* spectrum, size_t i, double* f1, double* f2) {
  return guarded([&] {
    require(spectrum, "spectrum");
    require_index(i, spectrum->result.pairs.size(), "eigenpair");
    copy_states(spectrum->result.pairs[i].phi, f1, f2);
  });
}

fd_status fd_spectrum_gram(const fd_spectrum* spectrum, double* matrix) {
  return guarded([&] {
    require(spectrum, "spectrum");
    require(matrix, "matrix");
    const auto gram = orthogonality_matrix(spectrum->result.pairs);
    const size_t n = gram.size();
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j)
        matrix[i * n + j] = gram[i][j];
  });
}

fd_status fd_spectrum_relation(const fd_spectrum* spectrum, size_t i, fd_relation_info* out) {
  return guarded([&] {
    require(spectrum, "spectrum");
    require(out, "out");
    require_index(i, spectrum->result.pairs.size(), "eigenpair");
    const RelationCheck c = check_relation_2_8(spectrum->result.pairs[i], *spectrum->disc);
    *out = {c.defect, c.beta_alpha, c.slope, c.staircase_slope};
  });
}

size_t fd_spectrum_failure_count(const fd_spectrum* spectrum) {
  return spectrum ? spectrum->result.failures.size() : 0;
}

fd_status fd_spectrum_failure(const fd_spectrum* spectrum, size_t i, double* lo, double* hi, const char** reason) {
  return guarded([&] {
    require(spectrum, "spectrum");
    require_index(i, spectrum->result.failures.size(), "failure");
    const BracketFailure& f = spectrum->result.failures[i];
    if (lo)
      *lo = f.bracket.lo;
    if (hi)
      *hi = f.bracket.hi;
    if (reason)
      *reason = f.reason.c_str();
  });
}

fd_status fd_convergence_study(const fd_problem_desc* desc, const fd_solve_options* options, const int* levels,
                               size_t nlevels, int index, double* lambdas, double* orders) {
  return guarded([&] {
    require(levels, "levels");
    const DiracProblem problem = problem_from(desc);
    const std::vector<int> lv(levels, levels + nlevels);
    const ConvergenceStudy study = convergence_study(problem, method_from(desc->method), options_from(options), lv, index);
    for (size_t i = 0; i < study.levels.size(); ++i)
      if (lambdas)
        lambdas[i] = study.levels[i].lambda.value_or(kNaN);
    if (orders)
      std::copy(study.observed_orders.begin(), study.observed_orders.end(), orders);
  });
}

void fd_run_settings_init(fd_run_settings* settings) {
  if (!settings)
    return;
  const RunSettings defaults;
  settings->steps = defaults.steps;
  settings->scan_points = defaults.scan_points;
  settings->tol = defaults.tol;
  settings->coefficient_argument = FD_COEFF_ABSCISSA;
}

fd_status fd_preset(int example, const char** p, const char** r) {
  return guarded([&] {
    const Preset& pr = preset(example);
    if (p)
      *p = pr.p.c_str();
    if (r)
      *r = pr.r.c_str();
  });
}

fd_status fd_table_run(int example, const fd_run_settings* settings, fd_table** out) {
  return guarded([&] {
    require(out, "out");
    *out = new fd_table{run_table(example, settings_from(settings))};
  });
}

void fd_table_free(fd_table* table) { delete table; }

int fd_table_pass(const fd_table* table) { return table && table->report.pass ? 1 : 0; }

size_t fd_table_row_count(const fd_table* table) { return table ? table->report.rows.size() : 0; }

fd_status fd_table_row(const fd_table* table, size_t row, double* alpha, size_t* cells, int* pass) {
  return guarded([&] {
    require(table, "table");
    require_index(row, table->report.rows.size(), "row");
    const TableRow& r = table->report.rows[row];
    if (alpha)
      *alpha = r.alpha.value_or(kNaN);
    if (cells)
      *cells = r.cells.size();
    if (pass)
      *pass = r.pass ? 1 : 0;
  });
}

fd_status fd_table_cell_get(const fd_table* table, size_t row, size_t col, fd_table_cell* out) {
  return guarded([&] {
    require(table, "table");
    require(out, "out");
    require_index(row, table->report.rows.size(), "row");
    const TableRow& r = table->report.rows[row];
    require_index(col, r.cells.size(), "cell");
    const TableCell& c = r.cells[col];
    *out = {c.expected ? 1 : 0,  c.expected.value_or(kNaN), c.computed ? 1 : 0, c.computed.value_or(kNaN),
            c.tolerance,         c.relative ? 1 : 0,         c.pass ? 1 : 0};
  });
}

size_t fd_table_gap_count(const fd_table* table) { return table ? table->report.gaps.size() : 0; }

fd_status fd_table_gap_get(const fd_table* table, size_t i, fd_table_gap* out) {
  return guarded([&] {
    require(table, "table");
    require(out, "out");
    require_index(i, table->report.gaps.size(), "gap");
    const GapRow& g = table->report.gaps[i];
    *out = {g.n, g.classical ? 1 : 0, g.classical.value_or(kNaN), g.gap ? 1 : 0, g.gap.value_or(kNaN),
            g.published_gap};
  });
}

fd_status fd_verify_run(const char* suite, const fd_run_settings* settings, fd_verify** out) {
  return guarded([&] {
    require(suite, "suite");
    require(out, "out");
    *out = new fd_verify{run_verification(parse_suite(suite), settings_from(settings))};
  });
}

void fd_verify_free(fd_verify* report) { delete report; }

int fd_verify_pass(const fd_verify* report) { return report && report->report.pass() ? 1 : 0; }

size_t fd_verify_count(const fd_verify* report) { return report ? report->report.checks.size() : 0; }

fd_status fd_verify_check(const fd_verify* report, size_t i, fd_check* out) {
  return guarded([&] {
    require(report, "report");
    require(out, "out");
    require_index(i, report->report.checks.size(), "check");
    const CheckResult& c = report->report.checks[i];
    const fd_comparison cmp = c.comparison == Comparison::Below   ? FD_BELOW
                              : c.comparison == Comparison::Above ? FD_ABOVE
                                                                  : FD_NEAR;
    *out = {c.suite.c_str(), c.name.c_str(), c.value, c.threshold, cmp, c.target, c.pass ? 1 : 0};
  });
}

} // extern "C"
