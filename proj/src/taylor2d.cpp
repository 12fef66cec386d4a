#include "gpw/taylor2d.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace gpw {

namespace {

double binomial(int n, int k) {
  double r = 1.0;
  for (int t = 1; t <= k; ++t) r = r * (n - k + t) / t;
  return r;
}

double factorial(int n) {
  double r = 1.0;
  for (int t = 2; t <= n; ++t) r *= t;
  return r;
}

// Coefficient (i, j) of the antiderivative identity g = (1/i) sum k a_kl f_{i-k,j-l}
// obtained from d_x g = (d_x a) f, or from d_y when i == 0. Only reads f at
// lengths < i + j, so f may be filled in graded order.
Complex chain_coefficient(const TaylorSeries2& a, const TaylorSeries2& f, int i, int j) {
  Complex acc = 0.0;
  if (i > 0) {
    for (int k = 1; k <= i; ++k) {
      for (int l = 0; l <= j; ++l) {
        if (k + l > a.order()) continue;
        acc += static_cast<double>(k) * a[{k, l}] * f[{i - k, j - l}];
      }
    }
    return acc / static_cast<double>(i);
  }
  for (int l = 1; l <= j; ++l) {
    if (l > a.order()) continue;
    acc += static_cast<double>(l) * a[{0, l}] * f[{0, j - l}];
  }
  return acc / static_cast<double>(j);
}

void require_order(const TaylorSeries2& a, int order, const char* what) {
  if (order < 0) throw std::invalid_argument(std::string(what) + ": negative truncation order");
  if (order > a.order())
    throw std::invalid_argument(std::string(what) + ": truncation order exceeds input order");
}

}  // namespace

std::strong_ordering mi_compare(MultiIndex a, MultiIndex b) noexcept {
  if (a.length() != b.length()) return a.length() <=> b.length();
  return a.i <=> b.i;
}

MultiIndex multi_index_at(std::size_t offset) noexcept {
  int n = 0;
  while (triangular_size(n) <= offset) ++n;
  const int j = static_cast<int>(offset - triangular_size(n - 1));
  return {n - j, j};
}

TaylorSeries2::TaylorSeries2(Point2 center, int order)
    : center_(center), order_(order) {
  if (order < 0) throw std::invalid_argument("TaylorSeries2: negative order");
  coeffs_.assign(triangular_size(order), Complex{});
}

TaylorSeries2::TaylorSeries2(Point2 center, int order, std::vector<Complex> coeffs)
    : center_(center), order_(order), coeffs_(std::move(coeffs)) {
  if (order < 0) throw std::invalid_argument("TaylorSeries2: negative order");
  if (coeffs_.size() != triangular_size(order))
    throw std::invalid_argument("TaylorSeries2: coefficient count does not match order");
}

TaylorSeries2 TaylorSeries2::constant(Point2 center, int order, Complex value) {
  TaylorSeries2 s(center, order);
  s.coeffs_[0] = value;
  return s;
}

TaylorSeries2 TaylorSeries2::coordinate_x(Point2 center, int order) {
  TaylorSeries2 s = constant(center, order, center.x);
  if (order >= 1) s[{1, 0}] = 1.0;
  return s;
}

TaylorSeries2 TaylorSeries2::coordinate_y(Point2 center, int order) {
  TaylorSeries2 s = constant(center, order, center.y);
  if (order >= 1) s[{0, 1}] = 1.0;
  return s;
}

Complex TaylorSeries2::operator[](MultiIndex m) const {
  if (m.i < 0 || m.j < 0 || m.length() > order_)
    throw std::out_of_range("TaylorSeries2: multi-index beyond truncation order");
  return coeffs_[triangular_offset(m)];
}

Complex& TaylorSeries2::operator[](MultiIndex m) {
  if (m.i < 0 || m.j < 0 || m.length() > order_)
    throw std::out_of_range("TaylorSeries2: multi-index beyond truncation order");
  return coeffs_[triangular_offset(m)];
}

TaylorSeries2 TaylorSeries2::resized(int order) const {
  TaylorSeries2 out(center_, order);
  const std::size_t n = std::min(coeffs_.size(), out.coeffs_.size());
  std::copy_n(coeffs_.begin(), n, out.coeffs_.begin());
  return out;
}

Complex TaylorSeries2::evaluate(Point2 p) const {
  const double X = p.x - center_.x;
  const double Y = p.y - center_.y;
  Complex result = 0.0;
  for (int j = order_; j >= 0; --j) {
    Complex row = 0.0;
    for (int i = order_ - j; i >= 0; --i) row = row * X + coeffs_[triangular_offset({i, j})];
    result = result * Y + row;
  }
  return result;
}

double TaylorSeries2::max_abs() const noexcept {
  double m = 0.0;
  for (const auto& c : coeffs_) m = std::max(m, std::abs(c));
  return m;
}

void TaylorSeries2::check_compatible(const TaylorSeries2& rhs) const {
  if (!(center_ == rhs.center_)) throw std::invalid_argument("TaylorSeries2: center mismatch");
  if (order_ != rhs.order_) throw std::invalid_argument("TaylorSeries2: order mismatch");
}

TaylorSeries2& TaylorSeries2::operator+=(const TaylorSeries2& rhs) {
  check_compatible(rhs);
  for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] += rhs.coeffs_[k];
  return *this;
}

TaylorSeries2& TaylorSeries2::operator-=(const TaylorSeries2& rhs) {
  check_compatible(rhs);
  for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] -= rhs.coeffs_[k];
  return *this;
}

TaylorSeries2& TaylorSeries2::operator*=(Complex s) noexcept {
  for (auto& c : coeffs_) c *= s;
  return *this;
}

TaylorSeries2 TaylorSeries2::operator-() const {
  TaylorSeries2 out = *this;
  out *= -1.0;
  return out;
}

TaylorSeries2 multiply(const TaylorSeries2& a, const TaylorSeries2& b, int order) {
  if (!(a.center() == b.center())) throw std::invalid_argument("multiply: center mismatch");
  if (order < 0 || order > std::min(a.order(), b.order()))
    throw std::invalid_argument("multiply: insufficient input order");
  TaylorSeries2 out(a.center(), order);
  for (int n = 0; n <= order; ++n) {
    for (int j = 0; j <= n; ++j) {
      const int i = n - j;
      Complex acc = 0.0;
      for (int ti = 0; ti <= i; ++ti)
        for (int tj = 0; tj <= j; ++tj) acc += a[{i - ti, j - tj}] * b[{ti, tj}];
      out[{i, j}] = acc;
    }
  }
  return out;
}

TaylorSeries2 derive(const TaylorSeries2& a, MultiIndex d) {
  if (d.i < 0 || d.j < 0) throw std::invalid_argument("derive: negative multi-index");
  if (d.length() > a.order()) throw std::invalid_argument("derive: |d| exceeds series order");
  const int order = a.order() - d.length();
  TaylorSeries2 out(a.center(), order);
  for (int n = 0; n <= order; ++n) {
    for (int j = 0; j <= n; ++j) {
      const int i = n - j;
      out[{i, j}] = binomial(i + d.i, d.i) * binomial(j + d.j, d.j) * a[{i + d.i, j + d.j}];
    }
  }
  return out;
}

TaylorSeries2 partial(const TaylorSeries2& a, MultiIndex d) {
  TaylorSeries2 out = derive(a, d);
  out *= factorial(d.i) * factorial(d.j);
  return out;
}

TaylorSeries2 exp_series(const TaylorSeries2& a, int order) {
  require_order(a, order, "exp_series");
  if (a[{0, 0}] != Complex{})
    throw std::domain_error("exp_series: nonzero constant coefficient (normalization violated)");
  TaylorSeries2 out(a.center(), order);
  out[{0, 0}] = 1.0;
  for (int n = 1; n <= order; ++n)
    for (int j = 0; j <= n; ++j) out[{n - j, j}] = chain_coefficient(a, out, n - j, j);
  return out;
}

namespace {

void sincos_series(const TaylorSeries2& a, int order, TaylorSeries2& s, TaylorSeries2& c) {
  require_order(a, order, "sin/cos series");
  s = TaylorSeries2(a.center(), order);
  c = TaylorSeries2(a.center(), order);
  s[{0, 0}] = std::sin(a[{0, 0}]);
  c[{0, 0}] = std::cos(a[{0, 0}]);
  for (int n = 1; n <= order; ++n) {
    for (int j = 0; j <= n; ++j) {
      const int i = n - j;
      s[{i, j}] = chain_coefficient(a, c, i, j);
      c[{i, j}] = -chain_coefficient(a, s, i, j);
    }
  }
}

}  // namespace

TaylorSeries2 sin_series(const TaylorSeries2& a, int order) {
  TaylorSeries2 s(a.center(), 0), c(a.center(), 0);
  sincos_series(a, order, s, c);
  return s;
}

TaylorSeries2 cos_series(const TaylorSeries2& a, int order) {
  TaylorSeries2 s(a.center(), 0), c(a.center(), 0);
  sincos_series(a, order, s, c);
  return c;
}

TaylorSeries2 pow_series(const TaylorSeries2& a, int k, int order) {
  require_order(a, order, "pow_series");
  if (k < 0) throw std::invalid_argument("pow_series: negative exponent");
  TaylorSeries2 result = TaylorSeries2::constant(a.center(), order, 1.0);
  TaylorSeries2 base = a.resized(order);
  while (k > 0) {
    if (k & 1) result = multiply(result, base, order);
    k >>= 1;
    if (k > 0) base = multiply(base, base, order);
  }
  return result;
}

TaylorSeries2 elementary(ElementaryKind kind, const ElementaryParams& params, Point2 center,
                         int order) {
  const auto coordinate = [&](Coordinate c) {
    return c == Coordinate::x ? TaylorSeries2::coordinate_x(center, order)
                              : TaylorSeries2::coordinate_y(center, order);
  };
  switch (kind) {
    case ElementaryKind::constant:
      return TaylorSeries2::constant(center, order, params.value);
    case ElementaryKind::coordinate_x:
      return TaylorSeries2::coordinate_x(center, order);
    case ElementaryKind::coordinate_y:
      return TaylorSeries2::coordinate_y(center, order);
    case ElementaryKind::sin_of:
    case ElementaryKind::cos_of: {
      TaylorSeries2 arg = coordinate(params.coordinate) * Complex(params.scale);
      arg[{0, 0}] += params.shift;
      return kind == ElementaryKind::sin_of ? sin_series(arg, order) : cos_series(arg, order);
    }
    case ElementaryKind::power_of_coordinate:
      return pow_series(coordinate(params.coordinate), params.exponent, order);
    case ElementaryKind::affine: {
      TaylorSeries2 s = TaylorSeries2::coordinate_x(center, order) * Complex(params.ax) +
                        TaylorSeries2::coordinate_y(center, order) * Complex(params.ay);
      s[{0, 0}] += params.value;
      return s;
    }
  }
  throw std::invalid_argument("elementary: unknown kind");
}

}  // namespace gpw
