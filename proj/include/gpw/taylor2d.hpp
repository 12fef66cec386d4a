#pragma once

#include <complex>
#include <compare>
#include <cstddef>
#include <span>
#include <vector>

namespace gpw {

using Complex = std::complex<double>;

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point2&, const Point2&) = default;
};

/// Bivariate multi-index (i, j) standing for the derivative d_x^i d_y^j.
struct MultiIndex {
  int i = 0;
  int j = 0;

  constexpr int length() const noexcept { return i + j; }
  friend constexpr bool operator==(const MultiIndex&, const MultiIndex&) = default;
};

/// Graded order on N^2: shorter multi-indices first, ties broken by the
/// x-exponent. This is the order used by the bivariate Faa di Bruno formula.
std::strong_ordering mi_compare(MultiIndex a, MultiIndex b) noexcept;

/// Position of (i, j) in dense triangular storage: (i+j)(i+j+1)/2 + j.
constexpr std::size_t triangular_offset(MultiIndex m) noexcept {
  const auto n = static_cast<std::size_t>(m.length());
  return n * (n + 1) / 2 + static_cast<std::size_t>(m.j);
}

constexpr std::size_t triangular_size(int order) noexcept {
  const auto q = static_cast<std::size_t>(order);
  return (q + 1) * (q + 2) / 2;
}

/// Inverse of triangular_offset.
MultiIndex multi_index_at(std::size_t offset) noexcept;

/// Truncated Taylor expansion of f about `center`, stored in the scaled
/// convention: coefficient (i, j) is d_x^i d_y^j f(center) / (i! j!).
/// Equivalently, the series is the polynomial sum c_{ij} X^i Y^j in the
/// shifted variables X = x - x0, Y = y - y0.
class TaylorSeries2 {
 public:
  TaylorSeries2(Point2 center, int order);
  TaylorSeries2(Point2 center, int order, std::vector<Complex> coeffs);

  static TaylorSeries2 constant(Point2 center, int order, Complex value);
  /// The series of x (resp. y) itself: x0 + X.
  static TaylorSeries2 coordinate_x(Point2 center, int order);
  static TaylorSeries2 coordinate_y(Point2 center, int order);

  Point2 center() const noexcept { return center_; }
  int order() const noexcept { return order_; }

  /// Throws std::out_of_range for |m| > order or negative components.
  Complex operator[](MultiIndex m) const;
  Complex& operator[](MultiIndex m);

  std::span<const Complex> coefficients() const noexcept { return coeffs_; }

  /// Truncate to a lower order or zero-pad to a higher one.
  TaylorSeries2 resized(int order) const;

  /// Polynomial value at a point (Horner in X then Y).
  Complex evaluate(Point2 p) const;

  double max_abs() const noexcept;

  TaylorSeries2& operator+=(const TaylorSeries2& rhs);
  TaylorSeries2& operator-=(const TaylorSeries2& rhs);
  TaylorSeries2& operator*=(Complex s) noexcept;

  friend TaylorSeries2 operator+(TaylorSeries2 a, const TaylorSeries2& b) { return a += b; }
  friend TaylorSeries2 operator-(TaylorSeries2 a, const TaylorSeries2& b) { return a -= b; }
  friend TaylorSeries2 operator*(TaylorSeries2 a, Complex s) { return a *= s; }
  friend TaylorSeries2 operator*(Complex s, TaylorSeries2 a) { return a *= s; }
  TaylorSeries2 operator-() const;

 private:
  void check_compatible(const TaylorSeries2& rhs) const;

  Point2 center_;
  int order_;
  std::vector<Complex> coeffs_;
};

/// Truncated product: coefficient (i, j) of the result, i + j <= order,
/// is sum over (k, l) <= (i, j) of a_{i-k, j-l} b_{k, l}.
/// Requires a shared center and order <= min(a.order, b.order).
TaylorSeries2 multiply(const TaylorSeries2& a, const TaylorSeries2& b, int order);

/// Scaled derivative D^{d} a = d^d a / (d.i! d.j!) as a series of order
/// a.order - |d|: result_{ij} = C(i+di, di) C(j+dj, dj) a_{i+di, j+dj}.
TaylorSeries2 derive(const TaylorSeries2& a, MultiIndex d);

/// Unscaled partial derivative d_x^{d.i} d_y^{d.j} a.
TaylorSeries2 partial(const TaylorSeries2& a, MultiIndex d);

/// exp(a) truncated at `order`, by the recurrence d(exp a) = (da) exp a.
/// The constant coefficient of `a` must be zero.
TaylorSeries2 exp_series(const TaylorSeries2& a, int order);

/// sin(a) and cos(a) for an arbitrary series argument (coupled recurrence).
TaylorSeries2 sin_series(const TaylorSeries2& a, int order);
TaylorSeries2 cos_series(const TaylorSeries2& a, int order);

/// a^k for a non-negative integer k by repeated squaring.
TaylorSeries2 pow_series(const TaylorSeries2& a, int k, int order);

enum class ElementaryKind {
  constant,
  coordinate_x,
  coordinate_y,
  sin_of,
  cos_of,
  power_of_coordinate,
  affine,
};

enum class Coordinate { x, y };

/// Parameters for elementary(). Which fields are read depends on the kind:
///   constant:             value
///   coordinate_x/_y:      none
///   sin_of / cos_of:      coordinate, scale, shift  -> sin(scale*coord + shift)
///   power_of_coordinate:  coordinate, exponent      -> coord^exponent
///   affine:               value, ax, ay             -> value + ax*x + ay*y
struct ElementaryParams {
  Complex value = 0.0;
  Coordinate coordinate = Coordinate::x;
  double scale = 1.0;
  double shift = 0.0;
  int exponent = 1;
  double ax = 0.0;
  double ay = 0.0;
};

TaylorSeries2 elementary(ElementaryKind kind, const ElementaryParams& params, Point2 center,
                         int order);

}  // namespace gpw
