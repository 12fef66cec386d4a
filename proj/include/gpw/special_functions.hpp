#pragma once

#include <vector>

namespace gpw {

struct ValueAndDerivative {
  double value = 0.0;
  double derivative = 0.0;
};

/// Ai(z) and Ai'(z) from the ascending (Maclaurin) series in long double.
/// Accurate to ~1e-13 relative for |z| <= 6.
ValueAndDerivative airy_ai(double z);

/// J_nu(x) and J_nu'(x) for nu in {0, 1} from the ascending series.
ValueAndDerivative bessel_j(int nu, double x);

/// Scaled Taylor coefficients a_0..a_n of Ai about z0, from Ai'' = z Ai.
std::vector<double> airy_taylor(double z0, int n);

/// Scaled Taylor coefficients of J_nu about x0 > 0, from the Bessel
/// equation x^2 y'' + x y' + (x^2 - nu^2) y = 0.
std::vector<double> bessel_taylor(int nu, double x0, int n);

/// Scaled Taylor coefficients of cos and sin about t0.
std::vector<double> cos_taylor(double t0, int n);
std::vector<double> sin_taylor(double t0, int n);

}  // namespace gpw
