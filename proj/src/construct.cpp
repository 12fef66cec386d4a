#include "gpw/construct.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>

namespace gpw {

namespace {

constexpr double kKappaFallbackTol = 1e-10;

double factorial(int n) {
  double r = 1.0;
  for (int t = 2; t <= n; ++t) r *= t;
  return r;
}

bool is_linear_index(MultiIndex m) { return m.length() == 1; }

}  // namespace

Complex evaluate_gpw(const GpwPolynomial& gpw, Point2 point) {
  return std::exp(gpw.lambda.evaluate(point));
}

std::string to_text(const GpwPolynomial& gpw) {
  std::string out;
  char buf[160];
  std::snprintf(buf, sizeof buf, "center %.17g %.17g\nM %d\nq %d\n", gpw.center.x, gpw.center.y,
                gpw.M, gpw.q);
  out += buf;
  for (int n = 0; n <= gpw.degree(); ++n) {
    for (int i = 0; i <= n; ++i) {
      const Complex v = gpw.lambda[{i, n - i}];
      std::snprintf(buf, sizeof buf, "%d %d %.17g %.17g\n", i, n - i, v.real(), v.imag());
      out += buf;
    }
  }
  return out;
}

GpwPolynomial parse_gpw_text(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string key;
  Point2 center;
  int M = 0, q = 0;
  if (!(in >> key >> center.x >> center.y) || key != "center")
    throw std::invalid_argument("parse_gpw_text: expected 'center x0 y0'");
  if (!(in >> key >> M) || key != "M") throw std::invalid_argument("parse_gpw_text: expected 'M <order>'");
  if (!(in >> key >> q) || key != "q") throw std::invalid_argument("parse_gpw_text: expected 'q <order>'");
  if (M < 2 || q < 1) throw std::invalid_argument("parse_gpw_text: invalid M or q");
  GpwPolynomial gpw{center, M, q, TaylorSeries2(center, M + q - 1)};
  const std::size_t expected = triangular_size(gpw.degree());
  std::size_t seen = 0;
  int i = 0, j = 0;
  double re = 0.0, im = 0.0;
  while (in >> i >> j >> re >> im) {
    if (i < 0 || j < 0 || i + j > gpw.degree())
      throw std::invalid_argument("parse_gpw_text: index beyond polynomial degree");
    gpw.lambda[{i, j}] = Complex(re, im);
    ++seen;
  }
  if (!in.eof()) throw std::invalid_argument("parse_gpw_text: malformed coefficient line");
  if (seen != expected) throw std::invalid_argument("parse_gpw_text: wrong number of coefficients");
  return gpw;
}

Eigen::MatrixXcd level_matrix(const PdeOperator& op, int L) {
  const int M = op.order();
  if (L < 0) throw std::invalid_argument("level_matrix: negative level");
  const int size = M + L + 1;
  Eigen::MatrixXcd T = Eigen::MatrixXcd::Zero(size, size);
  for (int c = 0; c < M; ++c) T(c, c) = 1.0;
  for (int I = 0; I <= L; ++I) {
    for (int k = 0; k <= M; ++k) {
      const double pi = factorial(k + I) * factorial(M - k + L - I) / (factorial(I) * factorial(L - I));
      T(M + I, I + k) = pi * op.alpha_at_center(k, M - k);
    }
  }
  return T;
}

Complex level_matrix_determinant(int M, int L, Complex alpha_M0) {
  Complex det = std::pow(alpha_M0, L + 1);
  for (int I = 0; I <= L; ++I) det *= factorial(I + M) / factorial(I);
  return det;
}

Eigen::VectorXcd level_rhs(const PdeOperator& op, const PhaseDraft& draft, int L) {
  const int M = op.order();
  if (L < 0) throw std::invalid_argument("level_rhs: negative level");
  if (draft.known_length < M + L)
    throw std::invalid_argument("level_rhs: lambda below the level-L layer not yet known");
  TaylorSeries2 P = draft.lambda;
  for (int n = M + L; n <= P.order(); ++n)
    for (int i = 0; i <= n; ++i) P[{i, n - i}] = 0.0;
  const TaylorSeries2 res = residual_series(op, P, L);
  Eigen::VectorXcd N(L + 1);
  for (int I = 0; I <= L; ++I) N(I) = -res[{I, L - I}];
  return N;
}

std::pair<Complex, Complex> linear_phase(const SymbolFactorization& f, Complex kappa, double theta) {
  Eigen::Vector2cd v(std::cos(theta), std::sin(theta));
  v(0) /= std::sqrt(f.D(0, 0));
  v(1) /= std::sqrt(f.D(1, 1));
  const Eigen::Vector2cd lam = Complex(0.0, 1.0) * kappa * f.A.partialPivLu().solve(v);
  return {lam(0), lam(1)};
}

ConstructionCounts construction_counts(int M, int q) {
  return {(M + q) * (M + q + 1) / 2, q * (q + 1) / 2, M * q + M * (M + 1) / 2};
}

GpwPolynomial construct_gpw(const PdeOperator& op, int q, const GpwNormalization& norm) {
  const int M = op.order();
  if (q < 1) throw std::invalid_argument("construct_gpw: q must be at least 1");
  if (op.coefficient_order() < q - 1)
    throw std::invalid_argument("construct_gpw: coefficient series order below q - 1");
  if (!check_hypotheses(op).hyp1)
    throw std::domain_error("construct_gpw: alpha_{M,0} vanishes at the center");

  const int dP = M + q - 1;
  GpwPolynomial gpw{op.center(), M, q, TaylorSeries2(op.center(), dP)};
  int fixed = 0;
  int solved = 0;

  bool linear_overridden = false;
  for (const auto& [idx, value] : norm.fixed_values) {
    if (idx.i < 0 || idx.j < 0 || idx.i >= M || idx.length() > dP || idx.length() == 0)
      throw std::invalid_argument("construct_gpw: fixed value given for a non-free coefficient");
    gpw.lambda[idx] = value;
    linear_overridden = linear_overridden || is_linear_index(idx);
  }
  if (!linear_overridden) {
    if (!norm.factorization || !norm.factorization->valid)
      throw std::domain_error("construct_gpw: normalization needs a valid symbol factorization");
    if (norm.kappa == Complex{}) throw std::domain_error("construct_gpw: kappa must be nonzero");
    const auto [l10, l01] = linear_phase(*norm.factorization, norm.kappa, norm.theta);
    gpw.lambda[{1, 0}] = l10;
    gpw.lambda[{0, 1}] = l01;
  }
  for (int i = 0; i < M; ++i) fixed += dP - i + 1;

  for (int L = 0; L < q; ++L) {
    const Eigen::MatrixXcd T = level_matrix(op, L);
    const Eigen::VectorXcd N = level_rhs(op, PhaseDraft{gpw.lambda, M + L}, L);
    Eigen::VectorXcd X(M + L + 1);
    for (int c = 0; c < M; ++c) X(c) = gpw.lambda[{c, M + L - c}];
    for (int I = 0; I <= L; ++I) {
      Complex acc = N(I);
      for (int k = 0; k < M; ++k) acc -= T(M + I, I + k) * X(I + k);
      X(I + M) = acc / T(M + I, I + M);
      gpw.lambda[{I + M, L - I}] = X(I + M);
      ++solved;
    }
  }

  const ConstructionCounts counts = construction_counts(M, q);
  if (solved != counts.equations || fixed != counts.fixed ||
      static_cast<std::size_t>(solved + fixed) != triangular_size(dP) ||
      counts.unknowns != static_cast<int>(triangular_size(dP)))
    throw std::logic_error("construct_gpw: unknown/equation bookkeeping mismatch");
  return gpw;
}

Complex choose_kappa(const PdeOperator& op, KappaPolicy policy) {
  const Complex a00 = op.alpha_at_center(0, 0);
  if (std::abs(a00) < kKappaFallbackTol) return 1.0;
  // Rebuild from parts so a negated real value does not carry -0 into the
  // imaginary part and land on the wrong side of the branch cut.
  const Complex radicand = policy == KappaPolicy::plane_wave ? a00 : -a00;
  return std::sqrt(Complex(radicand.real(), radicand.imag() + 0.0));
}

std::vector<double> basis_angles(int p) {
  if (p < 1) throw std::invalid_argument("basis_angles: p must be positive");
  std::vector<double> angles(p);
  constexpr double two_pi = 2.0 * std::numbers::pi;
  for (int l = 0; l < p; ++l) angles[l] = std::fmod(std::numbers::pi / 6.0 + two_pi * l / p, two_pi);
  return angles;
}

GpwBasis build_basis(const PdeOperator& op, int p, int q, Complex kappa) {
  const HypothesisReport hyp = check_hypotheses(op);
  if (!hyp.hyp1) throw std::domain_error("build_basis: alpha_{M,0} vanishes at the center");
  if (!hyp.hyp2) throw std::domain_error("build_basis: principal symbol has no valid factorization");
  GpwBasis basis{op.center(), op.order(), q, kappa, basis_angles(p), *hyp.hyp2, {}};
  basis.functions.reserve(p);
  for (double theta : basis.angles)
    basis.functions.push_back(construct_gpw(op, q, GpwNormalization{theta, kappa, *hyp.hyp2, {}}));
  return basis;
}

GpwBasis build_basis(const PdeOperator& op, int p, int q, KappaPolicy policy) {
  return build_basis(op, p, q, choose_kappa(op, policy));
}

}  // namespace gpw
