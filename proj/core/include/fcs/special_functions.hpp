#pragma once

#include <complex>
#include <stdexcept>
#include <vector>

namespace fcs {

using Complex = std::complex<double>;

/// Raised when a value would leave the finite double range.
class NumericalError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Spherical Bessel function of the first kind j_n(rho) for complex rho.
///
/// Uses Miller-style downward recurrence on the ratios j_k/j_{k-1}, then
/// normalizes against j_0 = sin(rho)/rho or j_{-1} = cos(rho)/rho, whichever
/// is larger in magnitude. For |rho| < 1e-8 the leading series term
/// rho^n/(2n+1)!! is returned. n = -1 gives cos(rho)/rho.
///
/// Throws std::invalid_argument for n < -1 or rho == 0, NumericalError if the
/// result is not finite (|Im rho| beyond ~700).
Complex spherical_bessel_j(int n, Complex rho);

/// j_{-1}(rho), ..., j_{n_max}(rho) from a single downward pass.
/// Element k of the result holds j_{k-1}.
std::vector<Complex> spherical_bessel_j_sequence(int n_max, Complex rho);

/// c_n(rho) = rho e^{i rho} [j_{n-1}(rho) - i j_n(rho)].
///
/// Evaluated through the bounded combinations e^{i rho} sin(rho) and
/// e^{i rho} cos(rho), so large Im(rho) does not overflow. c_0 = 1 exactly;
/// rho = 0 returns the analytic limit (1 for n = 0, 0 otherwise).
Complex c_coeff(int n, Complex rho);

/// c_0(rho), ..., c_{n_max}(rho) from one recurrence pass.
std::vector<Complex> c_coeffs(int n_max, Complex rho);

/// Start order used by the downward recurrence for orders up to n.
int bessel_start_order(int n, double abs_rho);

}  // namespace fcs
