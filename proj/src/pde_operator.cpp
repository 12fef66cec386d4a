#include "gpw/pde_operator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace gpw {

namespace {

constexpr double kHypothesisTol = 1e-10;
constexpr double kDegenerateTol = 1e-13;

// E_{k,l} = d_x^k d_y^l e^P / e^P for 0 <= k+l <= M, indexed by
// triangular_offset. E_{k,l} is kept to order Q + M - (k+l).
std::vector<TaylorSeries2> exp_ratio_table(const PdeOperator& op, const TaylorSeries2& P, int Q) {
  const int M = op.order();
  if (!(P.center() == op.center())) throw std::invalid_argument("apply_phase_operator: center mismatch");
  if (Q < 0 || P.order() < Q + M)
    throw std::invalid_argument("apply_phase_operator: phase order must be at least Q + M");
  if (op.coefficient_order() < Q)
    throw std::invalid_argument("apply_phase_operator: coefficient order below Q");

  const int W = Q + M;
  const TaylorSeries2 Px = partial(P, {1, 0});
  const TaylorSeries2 Py = partial(P, {0, 1});
  std::vector<TaylorSeries2> E;
  E.reserve(triangular_size(M));
  E.push_back(TaylorSeries2::constant(P.center(), W, 1.0));
  for (int n = 1; n <= M; ++n) {
    const int order = W - n;
    for (int l = 0; l <= n; ++l) {
      const int k = n - l;
      const bool along_x = (l == 0);
      const TaylorSeries2& prev =
          along_x ? E[triangular_offset({k - 1, 0})] : E[triangular_offset({k, l - 1})];
      const MultiIndex d = along_x ? MultiIndex{1, 0} : MultiIndex{0, 1};
      TaylorSeries2 next = partial(prev, d);
      next += multiply(along_x ? Px : Py, prev, order);
      E.push_back(std::move(next));
    }
  }
  return E;
}

}  // namespace

PdeOperator::PdeOperator(int M, Point2 center, std::vector<TaylorSeries2> coeffs,
                         std::optional<QuadraticForm> asserted_gamma)
    : M_(M), center_(center), coeffs_(std::move(coeffs)), asserted_gamma_(asserted_gamma) {
  if (M < 2) throw std::invalid_argument("PdeOperator: order must be at least 2");
  if (coeffs_.size() != triangular_size(M))
    throw std::invalid_argument("PdeOperator: expected (M+1)(M+2)/2 coefficient series");
  for (const auto& c : coeffs_) {
    if (!(c.center() == center_)) throw std::invalid_argument("PdeOperator: coefficient center mismatch");
    if (c.order() != coeffs_.front().order())
      throw std::invalid_argument("PdeOperator: coefficient orders differ");
  }
}

const TaylorSeries2& PdeOperator::alpha(int k, int l) const {
  if (k < 0 || l < 0 || k + l > M_) throw std::out_of_range("PdeOperator: no such coefficient");
  return coeffs_[triangular_offset({k, l})];
}

double PdeOperator::coefficient_magnitude() const {
  double m = 0.0;
  for (const auto& c : coeffs_) m = std::max(m, std::abs(c[{0, 0}]));
  return m;
}

Complex PdeOperator::principal_symbol(Complex X, Complex Y) const {
  Complex s = 0.0;
  for (int k = 0; k <= M_; ++k) s += alpha_at_center(k, M_ - k) * std::pow(X, k) * std::pow(Y, M_ - k);
  return s;
}

OperatorFamily::OperatorFamily(int M) : M_(M), providers_(triangular_size(M)) {
  if (M < 2) throw std::invalid_argument("OperatorFamily: order must be at least 2");
}

OperatorFamily OperatorFamily::from_expressions(
    int M, const std::vector<std::pair<MultiIndex, Expression>>& terms) {
  OperatorFamily f(M);
  for (const auto& [kl, expr] : terms) f.set(kl, expr);
  return f;
}

void OperatorFamily::set(MultiIndex kl, Provider provider) {
  if (kl.i < 0 || kl.j < 0 || kl.length() > M_)
    throw std::out_of_range("OperatorFamily: coefficient index beyond operator order");
  providers_[triangular_offset(kl)] = std::move(provider);
}

void OperatorFamily::set(MultiIndex kl, const Expression& expr) {
  set(kl, [expr](Point2 c, int order) { return expr.taylor(c, order); });
}

PdeOperator OperatorFamily::at(Point2 center, int order) const {
  std::vector<TaylorSeries2> coeffs;
  coeffs.reserve(providers_.size());
  for (const auto& p : providers_) {
    if (!p) {
      coeffs.emplace_back(center, order);
      continue;
    }
    TaylorSeries2 s = p(center, order);
    if (!(s.center() == center) || s.order() < order)
      throw std::runtime_error("OperatorFamily: provider returned an incompatible series");
    coeffs.push_back(s.resized(order));
  }
  return PdeOperator(M_, center, std::move(coeffs), asserted_gamma_);
}

Eigen::Matrix2cd gamma_matrix(const QuadraticForm& g) {
  Eigen::Matrix2cd G;
  G << g[0], g[1] / 2.0, g[1] / 2.0, g[2];
  return G;
}

std::optional<QuadraticForm> principal_quadratic_form(const PdeOperator& op) {
  const int M = op.order();
  if (M == 2) return QuadraticForm{op.alpha_at_center(2, 0), op.alpha_at_center(1, 1), op.alpha_at_center(0, 2)};
  if (M % 2 != 0 || !op.asserted_gamma()) return std::nullopt;

  // (g1 X^2 + g2 XY + g3 Y^2)^{M/2}: coefficient of X^k Y^{M-k}.
  const QuadraticForm g = *op.asserted_gamma();
  std::vector<Complex> power{1.0};
  for (int t = 0; t < M / 2; ++t) {
    std::vector<Complex> next(power.size() + 2, 0.0);
    for (std::size_t a = 0; a < power.size(); ++a) {
      next[a] += power[a] * g[2];
      next[a + 1] += power[a] * g[1];
      next[a + 2] += power[a] * g[0];
    }
    power = std::move(next);
  }
  double scale = 0.0;
  for (int k = 0; k <= M; ++k) scale = std::max(scale, std::abs(op.alpha_at_center(k, M - k)));
  for (int k = 0; k <= M; ++k)
    if (std::abs(power[k] - op.alpha_at_center(k, M - k)) > kHypothesisTol * std::max(scale, 1.0))
      return std::nullopt;
  return g;
}

SymbolFactorization factor_principal_symbol(const Eigen::Matrix2cd& gamma) {
  SymbolFactorization f;
  f.gamma = gamma;
  const Complex g1 = gamma(0, 0);
  const Complex g2 = gamma(0, 1) + gamma(1, 0);
  const Complex g3 = gamma(1, 1);
  const double eps = kDegenerateTol * std::max({std::abs(g1), std::abs(g2), std::abs(g3)});

  if (std::abs(g1) > eps) {
    f.A << 1.0, g2 / (2.0 * g1), 0.0, 1.0;
    f.D << g1, 0.0, 0.0, g3 - g2 * g2 / (4.0 * g1);
  } else if (std::abs(g3) > eps) {
    f.A << 1.0, 0.0, g2 / (2.0 * g3), 1.0;
    f.D << -g2 * g2 / (4.0 * g3), 0.0, 0.0, g3;
  } else {
    f.A << 0.5, 0.5, 0.5, -0.5;
    f.D << g2, 0.0, 0.0, -g2;
  }
  f.valid = eps > 0.0 && std::abs(f.D(0, 0)) > eps && std::abs(f.D(1, 1)) > eps;
  return f;
}

HypothesisReport check_hypotheses(const PdeOperator& op) {
  HypothesisReport r;
  const double a = std::abs(op.alpha_at_center(op.order(), 0));
  r.hyp1 = a > kHypothesisTol * op.coefficient_magnitude();
  if (const auto g = principal_quadratic_form(op)) {
    SymbolFactorization f = factor_principal_symbol(gamma_matrix(*g));
    if (f.valid) r.hyp2 = f;
  }
  return r;
}

TaylorSeries2 residual_series(const PdeOperator& op, const TaylorSeries2& P, int Q) {
  const std::vector<TaylorSeries2> E = exp_ratio_table(op, P, Q);
  TaylorSeries2 sum = op.alpha(0, 0).resized(Q);
  for (std::size_t t = 1; t < E.size(); ++t) {
    const MultiIndex kl = multi_index_at(t);
    sum += multiply(op.alpha(kl.i, kl.j), E[t], Q);
  }
  return sum;
}

TaylorSeries2 apply_phase_operator(const PdeOperator& op, const TaylorSeries2& P, int Q) {
  return residual_series(op, P, Q) - op.alpha(0, 0).resized(Q);
}

double residual_scale(const PdeOperator& op, const TaylorSeries2& P, int Q) {
  const std::vector<TaylorSeries2> E = exp_ratio_table(op, P, Q);
  double scale = op.alpha(0, 0).resized(Q).max_abs();
  for (std::size_t t = 1; t < E.size(); ++t) {
    const MultiIndex kl = multi_index_at(t);
    scale = std::max(scale, multiply(op.alpha(kl.i, kl.j), E[t], Q).max_abs());
  }
  return scale;
}

}  // namespace gpw
