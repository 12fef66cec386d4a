#include "gpw/interp.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace gpw {

namespace {

double factorial(int n) {
  double r = 1.0;
  for (int t = 2; t <= n; ++t) r *= t;
  return r;
}

Eigen::MatrixXcd empty_matrix(int n, std::size_t p) {
  if (n < 0) throw std::invalid_argument("taylor matrix: negative order");
  return Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(triangular_size(n)),
                                static_cast<Eigen::Index>(p));
}

void require_distinct(const std::vector<double>& angles) {
  for (std::size_t a = 0; a < angles.size(); ++a)
    for (std::size_t b = a + 1; b < angles.size(); ++b)
      if (std::abs(std::remainder(angles[a] - angles[b], 2.0 * std::numbers::pi)) < 1e-14)
        throw std::invalid_argument("reference matrix: duplicate angles");
}

TaylorMatrix monomial_matrix(const std::vector<std::pair<Complex, Complex>>& pairs, int n,
                             MatrixKind kind) {
  TaylorMatrix m{n, kind, empty_matrix(n, pairs.size())};
  for (std::size_t l = 0; l < pairs.size(); ++l) {
    const auto [a, b] = pairs[l];
    for (int K = 0; K <= n; ++K)
      for (int k2 = 0; k2 <= K; ++k2) {
        const int k1 = K - k2;
        m.entries(static_cast<Eigen::Index>(triangular_offset({k1, k2})), static_cast<Eigen::Index>(l)) =
            std::pow(a, k1) * std::pow(b, k2) / (factorial(k1) * factorial(k2));
      }
  }
  return m;
}

Eigen::VectorXcd pseudo_solve(const Eigen::MatrixXcd& A, const Eigen::VectorXcd& b) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd& s = svd.singularValues();
  Eigen::VectorXcd c = svd.matrixU().adjoint() * b;
  for (Eigen::Index k = 0; k < s.size(); ++k)
    c(k) = (s(0) > 0.0 && s(k) > kRankTolerance * s(0)) ? c(k) / s(k) : Complex{};
  return svd.matrixV() * c;
}

}  // namespace

TaylorMatrix assemble_gpw_matrix(const GpwBasis& basis, int n) {
  TaylorMatrix m{n, MatrixKind::gpw, empty_matrix(n, basis.functions.size())};
  for (std::size_t l = 0; l < basis.functions.size(); ++l) {
    const TaylorSeries2 phi = exp_series(basis.functions[l].lambda.resized(n), n);
    const auto c = phi.coefficients();
    for (std::size_t r = 0; r < c.size(); ++r)
      m.entries(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(l)) = c[r];
  }
  return m;
}

TaylorMatrix assemble_reference_matrix(const std::vector<double>& angles, int n) {
  require_distinct(angles);
  std::vector<std::pair<Complex, Complex>> pairs;
  for (double t : angles) pairs.emplace_back(std::cos(t), std::sin(t));
  return monomial_matrix(pairs, n, MatrixKind::reference);
}

TaylorMatrix assemble_classical_matrix(const std::vector<double>& angles, Complex kappa, int n) {
  require_distinct(angles);
  const Complex ik = Complex(0.0, 1.0) * kappa;
  std::vector<std::pair<Complex, Complex>> pairs;
  for (double t : angles) pairs.emplace_back(ik * std::cos(t), ik * std::sin(t));
  return monomial_matrix(pairs, n, MatrixKind::classical);
}

TaylorMatrix assemble_transition_matrix(const std::vector<std::pair<Complex, Complex>>& pairs, int n) {
  return monomial_matrix(pairs, n, MatrixKind::transition);
}

TaylorMatrix assemble_transition_matrix(const GpwBasis& basis, int n) {
  std::vector<std::pair<Complex, Complex>> pairs;
  for (const auto& f : basis.functions) pairs.emplace_back(f.lambda[{1, 0}], f.lambda[{0, 1}]);
  return assemble_transition_matrix(pairs, n);
}

int numeric_rank(const Eigen::MatrixXcd& mat, double tol) {
  if (mat.size() == 0) return 0;
  const Eigen::VectorXd s = Eigen::JacobiSVD<Eigen::MatrixXcd>(mat).singularValues();
  if (s.size() == 0 || s(0) == 0.0) return 0;
  return static_cast<int>((s.array() > tol * s(0)).count());
}

MatchResult taylor_match(const TaylorMatrix& mat, const Eigen::VectorXcd& F, MatchOptions options) {
  if (F.size() != mat.rows()) throw std::invalid_argument("taylor_match: dimension mismatch");
  Eigen::MatrixXcd A = mat.entries;
  Eigen::VectorXcd b = F;
  if (options.scale_rows) {
    for (Eigen::Index r = 0; r < A.rows(); ++r) {
      const double s = A.row(r).cwiseAbs().maxCoeff();
      if (s > 0.0) {
        A.row(r) /= s;
        b(r) /= s;
      }
    }
  }

  MatchResult r;
  if (options.mode == MatchMode::min_norm) {
    r.X = pseudo_solve(A, b);
  } else {
    // X = X0 + N y with N spanning the directions left free by lower orders.
    Eigen::VectorXcd X = Eigen::VectorXcd::Zero(A.cols());
    Eigen::MatrixXcd N = Eigen::MatrixXcd::Identity(A.cols(), A.cols());
    for (int K = 0; K <= mat.n && N.cols() > 0; ++K) {
      const auto first = static_cast<Eigen::Index>(triangular_offset({K, 0}));
      const Eigen::MatrixXcd B = A.middleRows(first, K + 1) * N;
      const Eigen::VectorXcd rhs = b.segment(first, K + 1) - A.middleRows(first, K + 1) * X;
      Eigen::JacobiSVD<Eigen::MatrixXcd> svd(B, Eigen::ComputeThinU | Eigen::ComputeFullV);
      const Eigen::VectorXd& s = svd.singularValues();
      Eigen::Index rank = 0;
      while (rank < s.size() && s(0) > 0.0 && s(rank) > kRankTolerance * s(0)) ++rank;
      Eigen::VectorXcd y = Eigen::VectorXcd::Zero(N.cols());
      if (rank > 0) {
        const Eigen::VectorXcd c = svd.matrixU().leftCols(rank).adjoint() * rhs;
        y = svd.matrixV().leftCols(rank) * s.head(rank).cwiseInverse().asDiagonal() * c;
      }
      X += N * y;
      N = N * svd.matrixV().rightCols(N.cols() - rank);
    }
    // Minimum-norm point of the remaining affine solution set X + span(N).
    r.X = X - N * (N.adjoint() * X);
  }
  r.residual = (mat.entries * r.X - F).norm();
  const double fn = F.norm();
  r.relative_residual = fn > 0.0 ? r.residual / fn : r.residual;
  return r;
}

Complex evaluate_combination(const GpwBasis& basis, const Eigen::VectorXcd& X, Point2 point) {
  if (X.size() != static_cast<Eigen::Index>(basis.functions.size()))
    throw std::invalid_argument("evaluate_combination: coefficient count mismatch");
  Complex sum = 0.0;
  for (std::size_t l = 0; l < basis.functions.size(); ++l) {
    const Complex x = X(static_cast<Eigen::Index>(l));
    if (x != Complex{}) sum += x * evaluate_gpw(basis.functions[l], point);
  }
  return sum;
}

}  // namespace gpw
