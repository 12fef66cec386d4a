#include <gtest/gtest.h>

#include <map>

#include "gpw/faa.hpp"
#include "gpw/pde_operator.hpp"
#include "test_util.hpp"

namespace gpw {
namespace {

using testing::max_abs_diff;
using testing::random_series;

using Coefficients = std::map<std::pair<int, int>, Complex>;

PdeOperator constant_operator(int M, Point2 c, int order, const Coefficients& values,
                              std::optional<QuadraticForm> gamma = std::nullopt) {
  std::vector<TaylorSeries2> coeffs;
  for (std::size_t t = 0; t < triangular_size(M); ++t) {
    const MultiIndex kl = multi_index_at(t);
    const auto it = values.find({kl.i, kl.j});
    coeffs.push_back(TaylorSeries2::constant(c, order, it == values.end() ? Complex{} : it->second));
  }
  return PdeOperator(M, c, std::move(coeffs), gamma);
}

PdeOperator random_operator(std::mt19937_64& rng, int M, Point2 c, int order) {
  std::vector<TaylorSeries2> coeffs;
  for (std::size_t k = 0; k < triangular_size(M); ++k) coeffs.push_back(random_series(rng, c, order));
  return PdeOperator(M, c, std::move(coeffs));
}

PdeOperator helmholtz(double kappa, Point2 c, int order) {
  return constant_operator(2, c, order, {{{2, 0}, -1.0}, {{0, 2}, -1.0}, {{0, 0}, -kappa * kappa}});
}

TEST(PhaseOperator, PlaneWaveSolvesHelmholtz) {
  const Point2 c{0.4, -1.1};
  const double kappa = 2.5;
  const PdeOperator op = helmholtz(kappa, c, 4);
  for (double theta : {0.0, 0.7, 2.0, 4.4}) {
    TaylorSeries2 P(c, 6);
    P[{1, 0}] = Complex(0, kappa * std::cos(theta));
    P[{0, 1}] = Complex(0, kappa * std::sin(theta));
    EXPECT_LT(residual_series(op, P, 4).max_abs(), 1e-13);
    const TaylorSeries2 LA = apply_phase_operator(op, P, 4);
    EXPECT_NEAR(std::abs(LA[{0, 0}] - kappa * kappa), 0.0, 1e-13);
    EXPECT_LT((LA - TaylorSeries2::constant(c, 4, kappa * kappa)).max_abs(), 1e-13);
  }
}

TEST(PhaseOperator, SecondOrderConstantTermByHand) {
  std::mt19937_64 rng(2);
  const Point2 c{0.2, 0.3};
  const PdeOperator op = random_operator(rng, 2, c, 3);
  const TaylorSeries2 P = random_series(rng, c, 5, true);
  const auto a = [&](int k, int l) { return op.alpha_at_center(k, l); };
  const Complex l10 = P[{1, 0}], l01 = P[{0, 1}];
  const Complex expected = a(2, 0) * (2.0 * P[{2, 0}] + l10 * l10) + a(1, 1) * (P[{1, 1}] + l10 * l01) +
                           a(0, 2) * (2.0 * P[{0, 2}] + l01 * l01) + a(1, 0) * l10 + a(0, 1) * l01;
  EXPECT_LT(std::abs(apply_phase_operator(op, P, 3)[{0, 0}] - expected), 1e-13);
}

TEST(PhaseOperator, SecondOrderMatchesDirectExpansion) {
  // alpha20 Pxx + alpha11 Pxy + alpha02 Pyy + alpha20 Px^2 + alpha11 Px Py + alpha02 Py^2
  //   + alpha10 Px + alpha01 Py
  std::mt19937_64 rng(4);
  const Point2 c{-0.5, 0.9};
  const int Q = 5;
  const PdeOperator op = random_operator(rng, 2, c, Q);
  const TaylorSeries2 P = random_series(rng, c, Q + 2, true);
  const auto d = [&](int i, int j) { return partial(P, {i, j}).resized(Q); };
  const auto m = [&](const TaylorSeries2& u, const TaylorSeries2& v) { return multiply(u, v, Q); };
  const auto& A = [&](int k, int l) { return op.alpha(k, l); };
  const TaylorSeries2 t1 = m(A(2, 0), d(2, 0)) + m(A(1, 1), d(1, 1)) + m(A(0, 2), d(0, 2));
  const TaylorSeries2 t2 = m(A(2, 0), m(d(1, 0), d(1, 0))) + m(A(1, 1), m(d(1, 0), d(0, 1))) +
                           m(A(0, 2), m(d(0, 1), d(0, 1)));
  const TaylorSeries2 t3 = m(A(1, 0), d(1, 0)) + m(A(0, 1), d(0, 1));
  EXPECT_LT(max_abs_diff(apply_phase_operator(op, P, Q), t1 + t2 + t3), 1e-12);
}

TEST(PhaseOperator, AgreesWithFaaDiBruno) {
  std::mt19937_64 rng(8);
  const Point2 c{1.0, 2.0};
  for (int M = 2; M <= 4; ++M) {
    for (int trial = 0; trial < 5; ++trial) {
      const int Q = 4;
      const PdeOperator op = random_operator(rng, M, c, Q);
      const TaylorSeries2 P = random_series(rng, c, Q + M, true);
      const TaylorSeries2 recurrence = apply_phase_operator(op, P, Q);
      const TaylorSeries2 faa = faa_phase_operator(op, P, Q);
      EXPECT_LT(max_abs_diff(recurrence, faa), 1e-12 * std::max(1.0, faa.max_abs())) << "M=" << M;
    }
  }
}

TEST(PhaseOperator, TopLayerEntersLinearlyAndHigherLayersNotAtAll) {
  std::mt19937_64 rng(21);
  const Point2 c{0.0, 0.0};
  for (int M = 2; M <= 3; ++M) {
    for (int L = 0; L <= 3; ++L) {
      const PdeOperator op = random_operator(rng, M, c, L);
      TaylorSeries2 P = random_series(rng, c, M + L + 2, true);
      const auto coeff = [&](const TaylorSeries2& phase, int I) {
        return apply_phase_operator(op, phase, L)[{I, L - I}];
      };
      const MultiIndex top{1, M + L - 1};
      const Complex t = Complex(0.3, -0.7);
      TaylorSeries2 p1 = P, p2 = P;
      p1[top] += t;
      p2[top] += 2.0 * t;
      TaylorSeries2 higher = P;
      higher[{2, M + L - 1}] += 5.0;
      higher[{0, M + L + 2}] -= 3.0;
      for (int I = 0; I <= L; ++I) {
        const Complex f0 = coeff(P, I);
        EXPECT_LT(std::abs((coeff(p2, I) - f0) - 2.0 * (coeff(p1, I) - f0)), 1e-12);
        EXPECT_EQ(coeff(higher, I), f0);
      }
    }
  }
}

TEST(PhaseOperator, ResidualOfZeroPhaseIsAlpha00) {
  std::mt19937_64 rng(6);
  const Point2 c{0.5, 0.5};
  const PdeOperator op = random_operator(rng, 3, c, 4);
  const TaylorSeries2 zero(c, 7);
  EXPECT_LT(max_abs_diff(residual_series(op, zero, 4), op.alpha(0, 0).resized(4)), 1e-15);
  EXPECT_LT(apply_phase_operator(op, zero, 4).max_abs(), 1e-15);
}

TEST(PhaseOperator, ResidualScaleBoundsResidual) {
  std::mt19937_64 rng(7);
  const Point2 c{0.5, 0.5};
  const PdeOperator op = random_operator(rng, 2, c, 3);
  const TaylorSeries2 P = random_series(rng, c, 5, true);
  const double scale = residual_scale(op, P, 3);
  EXPECT_GT(scale, 0.0);
  EXPECT_LE(residual_series(op, P, 3).max_abs(), 6.0 * scale);
  EXPECT_GE(scale, op.alpha(0, 0).resized(3).max_abs());
}

TEST(PhaseOperator, RejectsIncompatibleInputs) {
  std::mt19937_64 rng(9);
  const PdeOperator op = random_operator(rng, 2, {0, 0}, 3);
  EXPECT_THROW(apply_phase_operator(op, random_series(rng, {1, 0}, 5), 3), std::invalid_argument);
  EXPECT_THROW(apply_phase_operator(op, random_series(rng, {0, 0}, 4), 3), std::invalid_argument);
  EXPECT_THROW(apply_phase_operator(op, random_series(rng, {0, 0}, 6), 4), std::invalid_argument);
}

TEST(PdeOperatorTest, ConstructionChecks) {
  const Point2 c{0, 0};
  std::vector<TaylorSeries2> three(3, TaylorSeries2(c, 2));
  EXPECT_THROW(PdeOperator(1, c, three), std::invalid_argument);
  EXPECT_THROW(PdeOperator(2, c, three), std::invalid_argument);
  std::vector<TaylorSeries2> mixed(6, TaylorSeries2(c, 2));
  mixed[4] = TaylorSeries2(c, 3);
  EXPECT_THROW(PdeOperator(2, c, mixed), std::invalid_argument);
  mixed[4] = TaylorSeries2({1, 1}, 2);
  EXPECT_THROW(PdeOperator(2, c, mixed), std::invalid_argument);
  const PdeOperator op = helmholtz(2.0, c, 2);
  EXPECT_THROW(op.alpha(3, 0), std::out_of_range);
  EXPECT_DOUBLE_EQ(op.coefficient_magnitude(), 4.0);
  EXPECT_NEAR(std::abs(op.principal_symbol(1.0, 2.0) - Complex(-5.0)), 0.0, 1e-15);
}

TEST(OperatorFamilyTest, ExpandsExpressionsAtCenter) {
  const auto fam = OperatorFamily::from_expressions(
      2, {{{2, 0}, Expression::parse("x^2")}, {{0, 0}, Expression::parse("sin(y)")}});
  const Point2 c{1.5, 0.25};
  const PdeOperator op = fam.at(c, 4);
  EXPECT_EQ(op.order(), 2);
  EXPECT_EQ(op.coefficient_order(), 4);
  EXPECT_LT(max_abs_diff(op.alpha(2, 0), Expression::parse("x^2").taylor(c, 4)), 1e-15);
  EXPECT_LT(max_abs_diff(op.alpha(0, 0), Expression::parse("sin(y)").taylor(c, 4)), 1e-15);
  EXPECT_EQ(op.alpha(1, 1).max_abs(), 0.0);

  OperatorFamily f(2);
  EXPECT_THROW(f.set({3, 0}, Expression::parse("1")), std::out_of_range);
  f.set({2, 0}, [](Point2 p, int order) { return TaylorSeries2(p, order - 1); });
  EXPECT_THROW(f.at(c, 3), std::runtime_error);
  EXPECT_THROW(OperatorFamily(1), std::invalid_argument);
}

TEST(Hypotheses, Helmholtz) {
  const auto r = check_hypotheses(helmholtz(1.0, {0, 0}, 2));
  EXPECT_TRUE(r.hyp1);
  ASSERT_TRUE(r.hyp2.has_value());
  EXPECT_TRUE(r.hyp2->A.isApprox(Eigen::Matrix2cd::Identity()));
  EXPECT_TRUE(r.hyp2->D.isApprox(-Eigen::Matrix2cd::Identity()));
}

TEST(Hypotheses, VanishingLeadingCoefficient) {
  const auto r = check_hypotheses(constant_operator(2, {0, 0}, 2, {{{1, 1}, 1.0}, {{0, 2}, 1.0}}));
  EXPECT_FALSE(r.hyp1);
  EXPECT_TRUE(r.hyp2.has_value());
}

TEST(Hypotheses, OddOrderHasNoQuadraticForm) {
  const auto r = check_hypotheses(constant_operator(3, {0, 0}, 2, {{{3, 0}, 1.0}, {{0, 3}, 1.0}}));
  EXPECT_TRUE(r.hyp1);
  EXPECT_FALSE(r.hyp2.has_value());
}

TEST(Hypotheses, FourthOrderAssertedForm) {
  // (X^2 + Y^2)^2
  const Coefficients bilaplace{{{4, 0}, 1.0}, {{2, 2}, 2.0}, {{0, 4}, 1.0}};
  const QuadraticForm good{1.0, 0.0, 1.0};
  const QuadraticForm bad{1.0, 0.5, 1.0};
  EXPECT_TRUE(check_hypotheses(constant_operator(4, {0, 0}, 1, bilaplace, good)).hyp2.has_value());
  EXPECT_FALSE(check_hypotheses(constant_operator(4, {0, 0}, 1, bilaplace, bad)).hyp2.has_value());
  EXPECT_FALSE(check_hypotheses(constant_operator(4, {0, 0}, 1, bilaplace)).hyp2.has_value());
  const auto g = principal_quadratic_form(constant_operator(4, {0, 0}, 1, bilaplace, good));
  ASSERT_TRUE(g.has_value());
  EXPECT_EQ((*g)[1], Complex(0.0));
}

void expect_reconstructs(const SymbolFactorization& f) {
  const Eigen::Matrix2cd back = f.A.transpose() * f.D * f.A;
  EXPECT_LT((back - f.gamma).norm(), 1e-13 * std::max(1.0, f.gamma.norm()));
  EXPECT_EQ(f.D(0, 1), Complex(0.0));
  EXPECT_EQ(f.D(1, 0), Complex(0.0));
}

TEST(Factorization, RandomFormsReconstruct) {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> u(-2, 2);
  for (int trial = 0; trial < 50; ++trial) {
    QuadraticForm g{Complex(u(rng), u(rng)), Complex(u(rng), u(rng)), Complex(u(rng), u(rng))};
    if (trial % 5 == 1) g[0] = 0.0;
    if (trial % 5 == 2) g[0] = g[2] = 0.0;
    const SymbolFactorization f = factor_principal_symbol(gamma_matrix(g));
    EXPECT_TRUE(f.valid);
    expect_reconstructs(f);
  }
}

TEST(Factorization, CompletesSquareInX) {
  // X^2 + 0.2 c XY - 2 Y^2 = (X + 0.1 c Y)^2 - (2 + 0.01 c^2) Y^2
  for (double c : {-1.0, 0.0, 0.35, 1.0}) {
    const SymbolFactorization f = factor_principal_symbol(gamma_matrix({1.0, 0.2 * c, -2.0}));
    ASSERT_TRUE(f.valid);
    EXPECT_NEAR(std::abs(f.A(0, 1) - 0.1 * c), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(f.D(0, 0) - 1.0), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(f.D(1, 1) + 2.0 + 0.01 * c * c), 0.0, 1e-15);
    expect_reconstructs(f);
  }
}

TEST(Factorization, PureMixedSymbol) {
  const SymbolFactorization f = factor_principal_symbol(gamma_matrix({0.0, 1.0, 0.0}));
  ASSERT_TRUE(f.valid);
  expect_reconstructs(f);
  EXPECT_NEAR(std::abs(f.D(0, 0) - 1.0), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(f.D(1, 1) + 1.0), 0.0, 1e-15);
}

TEST(Factorization, DegenerateFormsAreRejected) {
  EXPECT_FALSE(factor_principal_symbol(gamma_matrix({0.0, 0.0, 0.0})).valid);
  // (X + Y)^2 has rank one
  const SymbolFactorization f = factor_principal_symbol(gamma_matrix({1.0, 2.0, 1.0}));
  EXPECT_FALSE(f.valid);
  expect_reconstructs(f);
}

}  // namespace
}  // namespace gpw
