#include "gpw/convergence.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "gpw/interp.hpp"

namespace gpw {

namespace {

constexpr int kRings = 8;
constexpr int kAngles = 32;
constexpr double kMarginFraction = 0.05;
constexpr int kMaxRedraws = 1000;
constexpr double kPreAsymptoticSlopeGap = 1.0;

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double disk_sample_max(const TestCase& c, const GpwBasis& basis, const Eigen::VectorXcd& X, double h) {
  const auto err_at = [&](Point2 p) { return std::abs(c.exact(p) - evaluate_combination(basis, X, p)); };
  double m = err_at(basis.center);
  for (int r = 1; r <= kRings; ++r) {
    const double radius = h * r / kRings;
    for (int a = 0; a < kAngles; ++a) {
      const double t = 2.0 * std::numbers::pi * a / kAngles;
      m = std::max(m, err_at({basis.center.x + radius * std::cos(t), basis.center.y + radius * std::sin(t)}));
    }
  }
  return m;
}

std::vector<double> center_errors(const TestCase& c, const ConvergenceConfig& cfg, int p,
                                  const std::vector<double>& h, std::uint64_t index) {
  const Point2 center = draw_center(c, cfg.seed, index, cfg.q);
  const PdeOperator op = c.family.at(center, cfg.q);
  const GpwBasis basis = build_basis(op, p, cfg.q);
  const TaylorMatrix M = assemble_gpw_matrix(basis, cfg.n);
  const MatchResult match = taylor_match(M, exact_solution_taylor(c, center, cfg.n), {cfg.match, false});
  return disk_errors(c, basis, match.X, h);
}

}  // namespace

std::vector<double> log_h_grid(double hmax, double hmin, int count) {
  if (count < 2 || !(hmax > hmin) || !(hmin > 0.0))
    throw std::invalid_argument("log_h_grid: need hmax > hmin > 0 and at least two values");
  std::vector<double> h(count);
  const double a = std::log10(hmax), b = std::log10(hmin);
  for (int k = 0; k < count; ++k) h[k] = std::pow(10.0, a + (b - a) * k / (count - 1));
  return h;
}

std::vector<double> default_h_grid() { return log_h_grid(1.0, 1e-6, 12); }

std::vector<double> disk_errors(const TestCase& c, const GpwBasis& basis, const Eigen::VectorXcd& X,
                                const std::vector<double>& h) {
  std::vector<std::size_t> order(h.size());
  for (std::size_t k = 0; k < h.size(); ++k) order[k] = k;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return h[a] < h[b]; });
  std::vector<double> err(h.size());
  double running = 0.0;
  for (std::size_t k : order) {
    running = std::max(running, disk_sample_max(c, basis, X, h[k]));
    err[k] = running;
  }
  return err;
}

Point2 draw_center(const TestCase& c, std::uint64_t seed, std::uint64_t index, int q) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  std::mt19937_64 rng(seq);
  const double m = kMarginFraction * c.domain.diameter();
  std::uniform_real_distribution<double> ux(c.domain.xmin + m, c.domain.xmax - m);
  std::uniform_real_distribution<double> uy(c.domain.ymin + m, c.domain.ymax - m);
  for (int attempt = 0; attempt < kMaxRedraws; ++attempt) {
    const Point2 p{ux(rng), uy(rng)};
    const HypothesisReport hyp = check_hypotheses(c.family.at(p, std::max(q, 0)));
    if (hyp.hyp1 && hyp.hyp2) return p;
    std::clog << "convergence: hypotheses fail at (" << p.x << ", " << p.y << "), redrawing\n";
  }
  throw std::runtime_error("draw_center: no admissible center found in " + c.name);
}

ConvergenceReport run_convergence(const TestCase& c, const ConvergenceConfig& cfg) {
  if (cfg.n < 0 || cfg.q < 1 || cfg.centers < 1)
    throw std::invalid_argument("run_convergence: need n >= 0, q >= 1 and at least one center");
  const int p = cfg.p > 0 ? cfg.p : 2 * cfg.n + 1;
  const std::vector<double> h = cfg.h.empty() ? default_h_grid() : cfg.h;
  for (std::size_t k = 1; k < h.size(); ++k)
    if (!(h[k] < h[k - 1])) throw std::invalid_argument("run_convergence: h must be strictly decreasing");

  const auto count = static_cast<std::size_t>(cfg.centers);
  std::vector<std::vector<double>> per_center(count);
  std::vector<std::exception_ptr> failures(count);
  unsigned threads = cfg.threads ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(count));
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        for (std::size_t idx = t; idx < count; idx += threads) {
          try {
            per_center[idx] = center_errors(c, cfg, p, h, idx);
          } catch (...) {
            failures[idx] = std::current_exception();
          }
        }
      });
    }
  }
  for (const auto& f : failures)
    if (f) std::rethrow_exception(f);

  ConvergenceReport r{c.name, cfg.n, cfg.q, p, cfg.seed, h, std::vector<double>(h.size(), 0.0), {}};
  for (const auto& errs : per_center)
    for (std::size_t k = 0; k < h.size(); ++k) r.max_err[k] = std::max(r.max_err[k], errs[k]);
  try {
    r.order = estimate_order(r.h, r.max_err);
  } catch (const std::invalid_argument& e) {
    std::clog << "convergence: " << e.what() << '\n';
    r.order.slope = std::numeric_limits<double>::quiet_NaN();
  }
  return r;
}

OrderEstimate estimate_order(const std::vector<double>& h, const std::vector<double>& err) {
  if (h.size() != err.size()) throw std::invalid_argument("estimate_order: size mismatch");
  if (h.size() < 4) throw std::invalid_argument("estimate_order: need at least 4 h values");
  std::vector<std::pair<double, double>> pts;  // (h, err), h decreasing, err > 0
  for (std::size_t k = 0; k < h.size(); ++k)
    if (h[k] > 0.0 && err[k] > 0.0 && std::isfinite(err[k])) pts.emplace_back(h[k], err[k]);
  std::sort(pts.begin(), pts.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
  if (pts.size() < 2) throw std::invalid_argument("estimate_order: too few usable points");

  OrderEstimate est;
  const double ref = pts.back().second;
  std::vector<double> plateau;
  for (auto it = pts.rbegin(); it != pts.rend() && it->second <= 10.0 * ref; ++it) plateau.push_back(it->second);
  if (plateau.size() >= 2) {
    std::sort(plateau.begin(), plateau.end());
    const std::size_t m = plateau.size() / 2;
    est.floor = plateau.size() % 2 ? plateau[m] : 0.5 * (plateau[m - 1] + plateau[m]);
  }

  std::vector<std::pair<double, double>> window;  // (log h, log err)
  for (const auto& [hk, ek] : pts) {
    if (est.floor && !(ek > 10.0 * *est.floor)) break;
    window.emplace_back(std::log(hk), std::log(ek));
  }
  // Drop large-h points whose local slope is far from the typical one.
  while (window.size() >= 3) {
    std::vector<double> local;
    for (std::size_t k = 1; k < window.size(); ++k)
      local.push_back((window[k - 1].second - window[k].second) / (window[k - 1].first - window[k].first));
    const double lead = local.front();
    std::nth_element(local.begin(), local.begin() + local.size() / 2, local.end());
    double median = local[local.size() / 2];
    if (local.size() % 2 == 0) {
      const double below = *std::max_element(local.begin(), local.begin() + local.size() / 2);
      median = 0.5 * (median + below);
    }
    if (std::abs(lead - median) <= kPreAsymptoticSlopeGap) break;
    window.erase(window.begin());
  }
  if (window.size() < 2)
    throw std::invalid_argument("estimate_order: too few points above the stagnation floor");

  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  const auto count = static_cast<double>(window.size());
  for (const auto& [x, y] : window) {
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  est.slope = (count * sxy - sx * sy) / (count * sxx - sx * sx);
  est.fitted_points = static_cast<int>(window.size());
  return est;
}

void emit_report(const std::vector<ConvergenceReport>& reports, std::ostream& out, ReportFormat format) {
  if (format == ReportFormat::csv) {
    out << "case,n,q,p,seed,h,max_err,slope,floor\n";
    for (const auto& r : reports) {
      const std::string floor = r.order.floor ? format_double(*r.order.floor) : "";
      for (std::size_t k = 0; k < r.h.size(); ++k)
        out << r.case_name << ',' << r.n << ',' << r.q << ',' << r.p << ',' << r.seed << ','
            << format_double(r.h[k]) << ',' << format_double(r.max_err[k]) << ','
            << format_double(r.order.slope) << ',' << floor << '\n';
    }
    return;
  }
  bool first = true;
  for (const auto& r : reports) {
    if (!first) out << "\n\n";
    first = false;
    out << "# case=" << r.case_name << " n=" << r.n << " q=" << r.q << " p=" << r.p << " seed=" << r.seed
        << " slope=" << format_double(r.order.slope) << '\n';
    for (std::size_t k = 0; k < r.h.size(); ++k)
      out << format_double(r.h[k]) << ' ' << format_double(r.max_err[k]) << '\n';
  }
}

void emit_report(const std::vector<ConvergenceReport>& reports, const std::string& path, ReportFormat format) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("emit_report: cannot open " + path);
  emit_report(reports, out, format);
  if (!out) throw std::runtime_error("emit_report: write failed for " + path);
}

std::vector<ConvergenceReport> parse_csv(std::istream& in) {
  std::vector<ConvergenceReport> reports;
  std::string line;
  if (!std::getline(in, line) || line != "case,n,q,p,seed,h,max_err,slope,floor")
    throw std::invalid_argument("parse_csv: missing or unexpected header");
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) f.push_back(field);
    if (f.size() == 8 && line.back() == ',') f.emplace_back();
    if (f.size() != 9) throw std::invalid_argument("parse_csv: expected 9 fields in '" + line + "'");
    const int n = std::stoi(f[1]), q = std::stoi(f[2]), p = std::stoi(f[3]);
    const std::uint64_t seed = std::stoull(f[4]);
    if (reports.empty() || reports.back().case_name != f[0] || reports.back().n != n ||
        reports.back().q != q || reports.back().p != p || reports.back().seed != seed) {
      ConvergenceReport r;
      r.case_name = f[0];
      r.n = n;
      r.q = q;
      r.p = p;
      r.seed = seed;
      r.order.slope = std::stod(f[7]);
      if (!f[8].empty()) r.order.floor = std::stod(f[8]);
      reports.push_back(std::move(r));
    }
    reports.back().h.push_back(std::stod(f[5]));
    reports.back().max_err.push_back(std::stod(f[6]));
  }
  return reports;
}

}  // namespace gpw
