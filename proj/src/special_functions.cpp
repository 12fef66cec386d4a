#include "gpw/special_functions.hpp"

#include <cmath>
#include <stdexcept>

namespace gpw {

namespace {

constexpr long double kAi0 = 0.355028053887817239260L;
constexpr long double kMinusAiPrime0 = 0.258819403792806798405L;
constexpr int kMaxTerms = 400;

bool converged(long double term, long double sum, int k) {
  return k > 4 && std::fabs(term) <= 1e-21L * std::fabs(sum);
}

}  // namespace

ValueAndDerivative airy_ai(double zd) {
  const long double z = zd;
  const long double z3 = z * z * z;
  // f = sum z^{3k} / prod (3m-1)(3m), g = sum z^{3k+1} / prod (3m)(3m+1).
  long double c_f = 1.0L, c_g = 1.0L;  // coefficients without the z powers
  long double f = 1.0L, g = z, df = 0.0L, dg = 1.0L;
  long double zp = 1.0L;  // z^{3k-3}
  for (int k = 1; k < kMaxTerms; ++k) {
    c_f /= static_cast<long double>((3 * k - 1) * (3 * k));
    c_g /= static_cast<long double>((3 * k) * (3 * k + 1));
    const long double tf = c_f * zp * z3;
    const long double tg = c_g * zp * z3 * z;
    const long double tdf = c_f * 3 * k * zp * z * z;
    const long double tdg = c_g * (3 * k + 1) * zp * z3;
    f += tf;
    g += tg;
    df += tdf;
    dg += tdg;
    zp *= z3;
    if (converged(tf, f, k) && converged(tg, g, k) && converged(tdf, df, k) && converged(tdg, dg, k))
      break;
  }
  return {static_cast<double>(kAi0 * f - kMinusAiPrime0 * g),
          static_cast<double>(kAi0 * df - kMinusAiPrime0 * dg)};
}

ValueAndDerivative bessel_j(int nu, double xd) {
  if (nu != 0 && nu != 1) throw std::invalid_argument("bessel_j: only nu = 0 and nu = 1");
  if (xd == 0.0) return nu == 0 ? ValueAndDerivative{1.0, 0.0} : ValueAndDerivative{0.0, 0.5};
  const long double h = static_cast<long double>(xd) / 2.0L;
  const long double h2 = h * h;
  // term_m = (-1)^m h^{2m+nu} / (m! (m+nu)!); derivative term = (2m+nu)/2 * h^{2m+nu-1} / (...)
  long double coeff = 1.0L;  // (-1)^m / (m! (m+nu)!)
  long double hp = 1.0L;     // h^{2m}
  long double value = 0.0L, deriv = 0.0L;
  for (int m = 0; m < kMaxTerms; ++m) {
    if (m > 0) {
      coeff /= -static_cast<long double>(m) * static_cast<long double>(m + nu);
      hp *= h2;
    }
    const long double t = coeff * hp * (nu == 1 ? h : 1.0L);
    long double td;
    if (nu == 0)
      td = m == 0 ? 0.0L : coeff * m * hp / h;
    else
      td = coeff * (2 * m + 1) * hp / 2.0L;
    value += t;
    deriv += td;
    if (m > 2 && std::fabs(t) <= 1e-21L * std::fabs(value) && std::fabs(td) <= 1e-21L * std::fabs(deriv))
      break;
  }
  return {static_cast<double>(value), static_cast<double>(deriv)};
}

std::vector<double> airy_taylor(double z0, int n) {
  if (n < 0) throw std::invalid_argument("airy_taylor: negative order");
  const ValueAndDerivative seed = airy_ai(z0);
  std::vector<long double> a(static_cast<std::size_t>(n) + 2, 0.0L);
  a[0] = seed.value;
  a[1] = seed.derivative;
  for (int m = 0; m + 2 <= n; ++m) {
    const long double prev = m >= 1 ? a[m - 1] : 0.0L;
    a[m + 2] = (z0 * a[m] + prev) / static_cast<long double>((m + 2) * (m + 1));
  }
  return {a.begin(), a.begin() + n + 1};
}

std::vector<double> bessel_taylor(int nu, double x0d, int n) {
  if (n < 0) throw std::invalid_argument("bessel_taylor: negative order");
  if (!(x0d > 0.0)) throw std::domain_error("bessel_taylor: expansion point must be positive");
  const ValueAndDerivative seed = bessel_j(nu, x0d);
  const long double x0 = x0d;
  const long double nu2 = static_cast<long double>(nu * nu);
  std::vector<long double> c(static_cast<std::size_t>(n) + 2, 0.0L);
  c[0] = seed.value;
  c[1] = seed.derivative;
  for (int m = 0; m + 2 <= n; ++m) {
    const long double cm1 = m >= 1 ? c[m - 1] : 0.0L;
    const long double cm2 = m >= 2 ? c[m - 2] : 0.0L;
    const long double rest = 2 * x0 * (m + 1) * m * c[m + 1] + static_cast<long double>(m) * (m - 1) * c[m] +
                             x0 * (m + 1) * c[m + 1] + m * c[m] + (x0 * x0 - nu2) * c[m] + 2 * x0 * cm1 + cm2;
    c[m + 2] = -rest / (x0 * x0 * (m + 2) * (m + 1));
  }
  return {c.begin(), c.begin() + n + 1};
}

std::vector<double> cos_taylor(double t0, int n) {
  std::vector<double> c(static_cast<std::size_t>(n) + 1);
  const double s = std::sin(t0), co = std::cos(t0);
  double f = 1.0;
  for (int k = 0; k <= n; ++k) {
    if (k > 0) f *= k;
    const double d = (k % 4 == 0) ? co : (k % 4 == 1) ? -s : (k % 4 == 2) ? -co : s;
    c[k] = d / f;
  }
  return c;
}

std::vector<double> sin_taylor(double t0, int n) {
  std::vector<double> c(static_cast<std::size_t>(n) + 1);
  const double s = std::sin(t0), co = std::cos(t0);
  double f = 1.0;
  for (int k = 0; k <= n; ++k) {
    if (k > 0) f *= k;
    const double d = (k % 4 == 0) ? s : (k % 4 == 1) ? co : (k % 4 == 2) ? -s : -co;
    c[k] = d / f;
  }
  return c;
}

}  // namespace gpw
