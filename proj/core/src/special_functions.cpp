#include "fcs/special_functions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace fcs {
namespace {

constexpr double kSmallRho = 1e-8;
constexpr Complex kI{0.0, 1.0};

void require_finite(Complex z, const char* what) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
    throw NumericalError(std::string(what) + ": result is not finite");
  }
}

// ln((2n+1)!!) = ln((2n+1)!) - n ln 2 - ln(n!)
double log_double_factorial_odd(int n) {
  return std::lgamma(2.0 * n + 2.0) - n * std::log(2.0) - std::lgamma(n + 1.0);
}

// Leading small-argument term rho^n / (2n+1)!!.
Complex leading_series_term(int n, Complex rho) {
  if (n == 0) return {1.0, 0.0};
  return std::pow(rho, n) * std::exp(-log_double_factorial_odd(n));
}

// ratio[k] = j_k(rho) / j_{k-1}(rho) for k = 0..n_max.
std::vector<Complex> bessel_ratios(int n_max, Complex rho) {
  const int start = bessel_start_order(n_max, std::abs(rho));
  std::vector<Complex> ratio(static_cast<std::size_t>(n_max) + 1);
  const Complex inv_rho = 1.0 / rho;
  Complex r{0.0, 0.0};
  for (int k = start; k >= 0; --k) {
    Complex denom = static_cast<double>(2 * k + 1) * inv_rho - r;
    if (denom == Complex{0.0, 0.0}) {
      // Exact zero of j_{k-1}; nudge off it (modified Lentz).
      denom = std::numeric_limits<double>::epsilon() * std::abs(inv_rho);
    }
    r = 1.0 / denom;
    if (k <= n_max) ratio[static_cast<std::size_t>(k)] = r;
  }
  return ratio;
}

// e^{i rho} sin(rho) and e^{i rho} cos(rho); bounded for Im rho >= 0.
void scaled_sin_cos(Complex rho, Complex& s, Complex& c) {
  if (std::abs(rho.imag()) > 20.0) {
    const Complex e2 = std::exp(2.0 * kI * rho);
    s = (e2 - 1.0) / (2.0 * kI);
    c = (e2 + 1.0) / 2.0;
  } else {
    const Complex e = std::exp(kI * rho);
    s = e * std::sin(rho);
    c = e * std::cos(rho);
  }
}

// Fills out[k] = scale * j_{k-1}(rho) for k = 0..n_max+1, given
// scale*j_{-1} = anchor_m1 and scale*j_0 = anchor_0.
std::vector<Complex> normalized_sequence(int n_max, Complex rho,
                                         Complex anchor_m1, Complex anchor_0,
                                         bool use_j0) {
  const auto ratio = bessel_ratios(std::max(n_max, 0), rho);
  std::vector<Complex> out(static_cast<std::size_t>(n_max) + 2);
  out[0] = anchor_m1;
  if (use_j0) {
    out[1] = anchor_0;
  } else {
    out[1] = anchor_m1 * ratio[0];
  }
  for (int k = 1; k <= n_max; ++k) {
    out[static_cast<std::size_t>(k) + 1] =
        out[static_cast<std::size_t>(k)] * ratio[static_cast<std::size_t>(k)];
  }
  return out;
}

}  // namespace

int bessel_start_order(int n, double abs_rho) {
  const int nominal = n + std::max(20, static_cast<int>(std::ceil(abs_rho)));
  const int turning = std::max(n, static_cast<int>(std::ceil(abs_rho))) + 30 +
                      static_cast<int>(std::ceil(10.0 * std::cbrt(abs_rho)));
  return std::max(nominal, turning);
}

std::vector<Complex> spherical_bessel_j_sequence(int n_max, Complex rho) {
  if (n_max < -1) throw std::invalid_argument("spherical_bessel_j: order must be >= -1");
  if (rho == Complex{0.0, 0.0}) {
    throw std::invalid_argument("spherical_bessel_j: rho must be nonzero");
  }
  if (std::abs(rho) < kSmallRho) {
    std::vector<Complex> out(static_cast<std::size_t>(n_max) + 2);
    out[0] = std::cos(rho) / rho;
    for (int k = 0; k <= n_max; ++k) out[static_cast<std::size_t>(k) + 1] = leading_series_term(k, rho);
    return out;
  }
  const Complex s = std::sin(rho);
  const Complex c = std::cos(rho);
  const bool use_j0 = std::abs(s) >= std::abs(c);
  auto out = normalized_sequence(n_max, rho, c / rho, s / rho, use_j0);
  for (const auto& v : out) require_finite(v, "spherical_bessel_j");
  return out;
}

Complex spherical_bessel_j(int n, Complex rho) {
  if (n < -1) throw std::invalid_argument("spherical_bessel_j: order must be >= -1");
  if (rho == Complex{0.0, 0.0}) {
    throw std::invalid_argument("spherical_bessel_j: rho must be nonzero");
  }
  if (n == -1) {
    const Complex v = std::cos(rho) / rho;
    require_finite(v, "spherical_bessel_j");
    return v;
  }
  return spherical_bessel_j_sequence(n, rho).back();
}

std::vector<Complex> c_coeffs(int n_max, Complex rho) {
  if (n_max < 0) throw std::invalid_argument("c_coeffs: n_max must be >= 0");
  std::vector<Complex> c(static_cast<std::size_t>(n_max) + 1, Complex{0.0, 0.0});
  c[0] = 1.0;
  if (n_max == 0 || rho == Complex{0.0, 0.0}) return c;

  if (std::abs(rho) < kSmallRho) {
    const Complex pre = rho * std::exp(kI * rho);
    for (int n = 1; n <= n_max; ++n) {
      c[static_cast<std::size_t>(n)] =
          pre * (leading_series_term(n - 1, rho) - kI * leading_series_term(n, rho));
    }
    return c;
  }

  // e[k] = rho e^{i rho} j_{k-1}(rho)
  Complex s, co;
  scaled_sin_cos(rho, s, co);
  const bool use_j0 = std::abs(s) >= std::abs(co);
  const auto e = normalized_sequence(n_max, rho, co, s, use_j0);
  for (int n = 1; n <= n_max; ++n) {
    const auto k = static_cast<std::size_t>(n);
    c[k] = e[k] - kI * e[k + 1];
    require_finite(c[k], "c_coeff");
  }
  return c;
}

Complex c_coeff(int n, Complex rho) {
  if (n < 0) throw std::invalid_argument("c_coeff: n must be >= 0");
  if (n == 0) return {1.0, 0.0};
  return c_coeffs(n, rho).back();
}

}  // namespace fcs
