#pragma once

#include <vector>

#include <Eigen/Dense>

#include "gpw/construct.hpp"

namespace gpw {

enum class MatrixKind { gpw, reference, classical, transition };

/// Scaled Taylor coefficients of p functions up to order n: row
/// triangular_offset({k1, k2}), column l.
struct TaylorMatrix {
  int n = 0;
  MatrixKind kind = MatrixKind::gpw;
  Eigen::MatrixXcd entries;

  Eigen::Index rows() const { return entries.rows(); }
  Eigen::Index cols() const { return entries.cols(); }
};

/// D^{(k1,k2)} exp(P_l) at the center for every basis member. Basis
/// functions with q < n - 1 are accepted (the matching may then lose order).
TaylorMatrix assemble_gpw_matrix(const GpwBasis& basis, int n);

/// cos^{k1} sin^{k2} / (k1! k2!) per angle. Throws on duplicate angles.
TaylorMatrix assemble_reference_matrix(const std::vector<double>& angles, int n);
/// Reference entries times (i kappa)^{k1+k2}.
TaylorMatrix assemble_classical_matrix(const std::vector<double>& angles, Complex kappa, int n);
/// (lambda10)^{k1} (lambda01)^{k2} / (k1! k2!) per linear phase pair.
TaylorMatrix assemble_transition_matrix(const std::vector<std::pair<Complex, Complex>>& pairs, int n);
TaylorMatrix assemble_transition_matrix(const GpwBasis& basis, int n);

constexpr double kRankTolerance = 1e-9;

/// Number of singular values above tol * (largest singular value).
int numeric_rank(const Eigen::MatrixXcd& mat, double tol = kRankTolerance);
inline int numeric_rank(const TaylorMatrix& mat, double tol = kRankTolerance) {
  return numeric_rank(mat.entries, tol);
}

enum class MatchMode {
  min_norm,  // minimum-norm least squares on all rows at once
  graded,    // least squares one total order at a time, each within the
             // solution set of the lower orders; min-norm at the end
};

struct MatchOptions {
  MatchMode mode = MatchMode::min_norm;
  bool scale_rows = false;
};

struct MatchResult {
  Eigen::VectorXcd X;
  double residual = 0.0;           // ||M X - F||
  double relative_residual = 0.0;  // residual / ||F|| (residual itself when F = 0)
};

/// Minimum-norm least-squares solution of M X = F by a truncated SVD with
/// relative cutoff kRankTolerance. `scale_rows` first divides each row of
/// M and F by the row's largest entry of M.
///
/// The graded mode matters when F is not in the range of M (q < n - 1):
/// it keeps the low-order Taylor rows matched exactly and pushes the
/// inconsistency into the highest orders. When F is in the range both modes
/// return the minimum-norm exact solution.
MatchResult taylor_match(const TaylorMatrix& mat, const Eigen::VectorXcd& F, MatchOptions options = {});

/// sum_l X_l exp(P_l(point)).
Complex evaluate_combination(const GpwBasis& basis, const Eigen::VectorXcd& X, Point2 point);

}  // namespace gpw
