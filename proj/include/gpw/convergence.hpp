#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "gpw/cases.hpp"
#include "gpw/construct.hpp"
#include "gpw/interp.hpp"

namespace gpw {

struct ConvergenceConfig {
  int n = 1;
  int q = 1;
  int p = 0;  // 0 means 2n + 1
  int centers = 50;
  std::uint64_t seed = 0;
  std::vector<double> h;  // empty means default_h_grid()
  unsigned threads = 0;   // 0 means hardware concurrency
  MatchMode match = MatchMode::graded;
};

/// `count` logarithmically spaced values from hmax down to hmin.
std::vector<double> log_h_grid(double hmax, double hmin, int count);
/// 12 values from 1 down to 1e-6.
std::vector<double> default_h_grid();

struct OrderEstimate {
  double slope = 0.0;
  std::optional<double> floor;
  int fitted_points = 0;
};

struct ConvergenceReport {
  std::string case_name;
  int n = 0, q = 0, p = 0;
  std::uint64_t seed = 0;
  std::vector<double> h;        // strictly decreasing
  std::vector<double> max_err;  // max over centers, per h
  OrderEstimate order;
};

/// Largest |u - u_a| on the deterministic polar sample of every disk of
/// radius <= h (8 rings x 32 angles plus the center), per h.
std::vector<double> disk_errors(const TestCase& c, const GpwBasis& basis, const Eigen::VectorXcd& X,
                                const std::vector<double>& h);

/// Uniform center in the case domain, at least 0.05 diam from the boundary,
/// redrawn until both hypotheses hold.
Point2 draw_center(const TestCase& c, std::uint64_t seed, std::uint64_t index, int q);

ConvergenceReport run_convergence(const TestCase& c, const ConvergenceConfig& cfg);

/// Stagnation floor: the run of smallest-h errors within 10x of the
/// smallest-h error, when it has at least two points (median). Slope: least
/// squares in log-log over the leading large-h run with error above 10x floor,
/// after dropping largest-h points while the window keeps at least 3 points
/// and its first local slope is more than 1 away from the median local slope.
/// Throws std::invalid_argument with fewer than 4 values or fewer than 2
/// usable points.
OrderEstimate estimate_order(const std::vector<double>& h, const std::vector<double>& err);

enum class ReportFormat { csv, plotdata };

void emit_report(const std::vector<ConvergenceReport>& reports, std::ostream& out, ReportFormat format);
void emit_report(const std::vector<ConvergenceReport>& reports, const std::string& path,
                 ReportFormat format);
/// Inverse of the csv format; rows with equal (case, n, q, p, seed) form one report.
std::vector<ConvergenceReport> parse_csv(std::istream& in);

}  // namespace gpw
