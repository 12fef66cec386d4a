// Command line front end: construct, validate, rank-study, convergence.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "gpw/cases.hpp"
#include "gpw/config.hpp"
#include "gpw/construct.hpp"
#include "gpw/convergence.hpp"
#include "gpw/interp.hpp"

namespace {

using namespace gpw;

constexpr int kValidationTrials = 20;

struct Options {
  std::string case_name;
  int n = 3;
  int q = 2;
  int p = 0;
  int centers = 50;
  std::uint64_t seed = 0;
  double hmin = 1e-6;
  double hmax = 1.0;
  int hcount = 12;
  std::string out;
  std::string format = "csv";
  std::string config;
  std::optional<double> x0, y0;
  double theta = std::numbers::pi / 6.0;
  std::optional<double> l10, l01;
  std::optional<OperatorFamily> op;
};

void apply_config(Options& o) {
  if (o.config.empty()) return;
  ConfigFile cfg = load_config(o.config);
  for (const auto& [key, value] : cfg.settings) {
    if (key == "case") o.case_name = value;
    else if (key == "n") o.n = std::stoi(value);
    else if (key == "q") o.q = std::stoi(value);
    else if (key == "p") o.p = std::stoi(value);
    else if (key == "centers") o.centers = std::stoi(value);
    else if (key == "seed") o.seed = std::stoull(value);
    else if (key == "hmin") o.hmin = std::stod(value);
    else if (key == "hmax") o.hmax = std::stod(value);
    else if (key == "hcount") o.hcount = std::stoi(value);
    else if (key == "out") o.out = value;
    else if (key == "format") o.format = value;
    else if (key == "x0") o.x0 = std::stod(value);
    else if (key == "y0") o.y0 = std::stod(value);
    else if (key == "theta") o.theta = std::stod(value);
    else if (key == "l10") o.l10 = std::stod(value);
    else if (key == "l01") o.l01 = std::stod(value);
    else throw std::invalid_argument("config: unknown key '" + key + "'");
  }
  if (cfg.op) o.op = std::move(cfg.op);
}

void write_output(const Options& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(o.out, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + o.out);
  f << text;
}

int run_construct(const Options& o) {
  std::optional<TestCase> tc;
  if (!o.op) tc = find_case(o.case_name.empty() ? "Ad" : o.case_name);
  const OperatorFamily family = o.op ? *o.op : tc->family;
  Point2 center{o.x0.value_or(0.0), o.y0.value_or(0.0)};
  if (tc) {
    if (!o.x0) center.x = 0.5 * (tc->domain.xmin + tc->domain.xmax);
    if (!o.y0) center.y = 0.5 * (tc->domain.ymin + tc->domain.ymax);
  }
  const PdeOperator op = family.at(center, o.q);
  GpwNormalization norm;
  norm.theta = o.theta;
  if (o.l10 || o.l01) {
    norm.fixed_values = {{{1, 0}, o.l10.value_or(0.0)}, {{0, 1}, o.l01.value_or(0.0)}};
  } else {
    const HypothesisReport hyp = check_hypotheses(op);
    norm.factorization = hyp.hyp2;
    norm.kappa = choose_kappa(op, KappaPolicy::sqrt_minus_alpha00);
  }
  const GpwPolynomial gpw = construct_gpw(op, o.q, norm);
  write_output(o, to_text(gpw));
  return 0;
}

int run_validate(const Options& o) {
  std::vector<TestCase> cases;
  if (o.case_name.empty()) cases = builtin_cases();
  else cases.push_back(find_case(o.case_name));
  bool ok = true;
  std::ostringstream out;
  const auto line = [&](const ValidationReport& r, const char* note) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%-18s trials=%d max_residual=%.3e %s%s\n", r.name.c_str(), r.trials,
                  r.max_residual, r.passed ? "PASS" : "FAIL", note);
    out << buf;
  };
  for (const auto& c : cases) {
    const ValidationReport r = validate_case(c, kValidationTrials, o.seed);
    ok = ok && r.passed;
    line(r, "");
    if (c.name == "Jc") {
      const ValidationReport flipped = validate_case(jc_opposite_sign(), kValidationTrials, o.seed);
      line(flipped, flipped.passed ? " (unexpected: both signs satisfy L u = 0)"
                                   : " (zeroth order sign +(1 - 2x^2 - sin y) does not annihilate u)");
    }
  }
  write_output(o, out.str());
  return ok ? 0 : 1;
}

int run_rank_study(const Options& o, bool n_given) {
  const TestCase c = find_case(o.case_name.empty() ? "Ad" : o.case_name);
  std::ostringstream out;
  out << "case n p rank_reference rank_gpw_min rank_gpw_max\n";
  const int n_lo = n_given ? o.n : 1, n_hi = n_given ? o.n : 4;
  for (int n = n_lo; n <= n_hi; ++n) {
    for (int p = std::max(1, 2 * n - 1); p <= 2 * n + 2; ++p) {
      const int ref = numeric_rank(assemble_reference_matrix(basis_angles(p), n));
      int lo = 1 << 30, hi = 0;
      for (int k = 0; k < o.centers; ++k) {
        const Point2 center = draw_center(c, o.seed, static_cast<std::uint64_t>(k), o.q);
        const GpwBasis basis = build_basis(c.family.at(center, o.q), p, o.q);
        const int r = numeric_rank(assemble_gpw_matrix(basis, n));
        lo = std::min(lo, r);
        hi = std::max(hi, r);
      }
      out << c.name << ' ' << n << ' ' << p << ' ' << ref << ' ' << lo << ' ' << hi << '\n';
    }
  }
  write_output(o, out.str());
  return 0;
}

int run_convergence_cmd(const Options& o) {
  const TestCase c = find_case(o.case_name.empty() ? "cs" : o.case_name);
  const ValidationReport v = validate_case(c, kValidationTrials, o.seed);
  if (!v.passed) {
    std::cerr << "validation failed for " << c.name << ": max residual " << v.max_residual << '\n';
    return 1;
  }
  ReportFormat format;
  if (o.format == "csv") format = ReportFormat::csv;
  else if (o.format == "plotdata") format = ReportFormat::plotdata;
  else throw std::invalid_argument("unknown format '" + o.format + "' (csv or plotdata)");

  ConvergenceConfig cfg;
  cfg.n = o.n;
  cfg.q = o.q;
  cfg.p = o.p;
  cfg.centers = o.centers;
  cfg.seed = o.seed;
  cfg.h = log_h_grid(o.hmax, o.hmin, o.hcount);
  const ConvergenceReport r = run_convergence(c, cfg);
  std::ostringstream out;
  emit_report({r}, out, format);
  write_output(o, out.str());
  std::cerr << c.name << " n=" << r.n << " q=" << r.q << " p=" << r.p << " slope=" << r.order.slope;
  if (r.order.floor) std::cerr << " floor=" << *r.order.floor;
  std::cerr << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Generalized plane wave construction and interpolation benchmarks"};
  app.require_subcommand(1);
  Options o;

  const auto common = [&](CLI::App* sub) {
    sub->add_option("--case", o.case_name, "Test case: Ad, Jc, JJ or cs");
    sub->add_option("--config", o.config, "key = value file; its values override flags");
    sub->add_option("--seed", o.seed, "Random seed");
    sub->add_option("--out", o.out, "Output file (default stdout)");
  };

  CLI::App* construct = app.add_subcommand("construct", "Construct one GPW and print its phase coefficients");
  common(construct);
  construct->add_option("--q", o.q, "Approximation order q");
  construct->add_option("--x0", o.x0, "Center x (default: domain midpoint)");
  construct->add_option("--y0", o.y0, "Center y (default: domain midpoint)");
  construct->add_option("--theta", o.theta, "Direction angle");
  construct->add_option("--l10", o.l10, "Fix lambda_{1,0} (skips the symbol normalization)");
  construct->add_option("--l01", o.l01, "Fix lambda_{0,1} (skips the symbol normalization)");

  CLI::App* validate = app.add_subcommand("validate", "Check L u = 0 for the exact solutions");
  common(validate);

  CLI::App* rank = app.add_subcommand("rank-study", "Numerical rank of reference and GPW matrices vs p");
  common(rank);
  CLI::Option* n_opt = rank->add_option("--n", o.n, "Matching order (default: 1..4)");
  rank->add_option("--q", o.q, "Approximation order q");
  int rank_centers = 10;
  rank->add_option("--centers", rank_centers, "Number of random centers (default 10)");

  CLI::App* conv = app.add_subcommand("convergence", "Random-center h-convergence study");
  common(conv);
  conv->add_option("--n", o.n, "Matching order n");
  conv->add_option("--q", o.q, "Approximation order q");
  conv->add_option("--p", o.p, "Basis size (default 2n+1)");
  conv->add_option("--centers", o.centers, "Number of random centers");
  conv->add_option("--hmin", o.hmin, "Smallest disk radius");
  conv->add_option("--hmax", o.hmax, "Largest disk radius");
  conv->add_option("--hcount", o.hcount, "Number of radii");
  conv->add_option("--format", o.format, "csv or plotdata");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*rank) o.centers = rank_centers;
    apply_config(o);
    if (*construct) return run_construct(o);
    if (*validate) return run_validate(o);
    if (*rank) return run_rank_study(o, n_opt->count() > 0);
    if (*conv) return run_convergence_cmd(o);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
