#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "gpw/pde_operator.hpp"
#include "gpw/taylor2d.hpp"

namespace gpw {

/// Phase polynomial P = sum lambda_{i,j} X^i Y^j of degree M + q - 1. The
/// generalized plane wave is exp(P).
struct GpwPolynomial {
  Point2 center;
  int M = 2;
  int q = 1;
  TaylorSeries2 lambda;

  int degree() const noexcept { return M + q - 1; }
};

/// exp(P(point)).
Complex evaluate_gpw(const GpwPolynomial& gpw, Point2 point);

/// Text form:
///   center <x0> <y0>
///   M <M>
///   q <q>
///   <i> <j> <re> <im>     one line per lambda, graded order, 17 digits
std::string to_text(const GpwPolynomial& gpw);
/// Throws std::invalid_argument on malformed input.
GpwPolynomial parse_gpw_text(std::string_view text);

/// Lower triangular matrix of size M+L+1 linking the unknowns
/// lambda_{i, M+L-i} of level L to the level-L residual equations. Rows
/// 0..M-1 are identity rows (fixed values); row M+I holds
/// (k+I)!(M-k+L-I)!/(I!(L-I)!) alpha_{k,M-k}(center) in column I+k.
Eigen::MatrixXcd level_matrix(const PdeOperator& op, int L);

/// prod_{I=0}^{L} (I+M)!/I! * alpha_{M,0}^{L+1}.
Complex level_matrix_determinant(int M, int L, Complex alpha_M0);

/// Phase coefficients known so far: every lambda of length < known_length.
struct PhaseDraft {
  TaylorSeries2 lambda;
  int known_length = 0;
};

/// Right-hand side of the level-L system: minus the (I, L-I) residual
/// coefficients with every lambda of length >= M+L set to zero.
Eigen::VectorXcd level_rhs(const PdeOperator& op, const PhaseDraft& draft, int L);

struct GpwNormalization {
  double theta = 0.0;
  Complex kappa = 1.0;
  std::optional<SymbolFactorization> factorization;
  /// Values for lambda_{i,j} with i < M, (i,j) != (0,0). Unlisted ones are
  /// zero, except (1,0) and (0,1) which come from theta, kappa and the
  /// factorization unless one of them is listed here.
  std::vector<std::pair<MultiIndex, Complex>> fixed_values;
};

/// (lambda_{1,0}, lambda_{0,1}) = i kappa A^{-1} D^{-1/2} (cos theta, sin theta).
std::pair<Complex, Complex> linear_phase(const SymbolFactorization& f, Complex kappa, double theta);

struct ConstructionCounts {
  int unknowns = 0;
  int equations = 0;
  int fixed = 0;
};

ConstructionCounts construction_counts(int M, int q);

/// Layer-by-layer forward substitution. Throws std::domain_error when
/// alpha_{M,0} vanishes at the center or when the normalization needs a
/// missing factorization or a zero kappa.
GpwPolynomial construct_gpw(const PdeOperator& op, int q, const GpwNormalization& norm);

enum class KappaPolicy {
  sqrt_minus_alpha00,  // sqrt(-alpha_{0,0}(center)), principal branch
  plane_wave,          // sqrt(alpha_{0,0}(center)); plane waves for -Laplace - k^2
};

/// Falls back to 1 when |alpha_{0,0}(center)| < 1e-10.
Complex choose_kappa(const PdeOperator& op, KappaPolicy policy);

/// pi/6 + 2 l pi / p for l = 0..p-1, reduced to [0, 2 pi).
std::vector<double> basis_angles(int p);

struct GpwBasis {
  Point2 center;
  int M = 2;
  int q = 1;
  Complex kappa = 1.0;
  std::vector<double> angles;
  SymbolFactorization factorization;
  std::vector<GpwPolynomial> functions;
};

GpwBasis build_basis(const PdeOperator& op, int p, int q,
                     KappaPolicy policy = KappaPolicy::sqrt_minus_alpha00);
GpwBasis build_basis(const PdeOperator& op, int p, int q, Complex kappa);

}  // namespace gpw
