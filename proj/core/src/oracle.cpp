#include "fcs/oracle.hpp"

#include <cmath>

namespace fcs {
namespace {

constexpr Complex kI{0.0, 1.0};

Complex constant_term(Complex z) { return z; }
Complex constant_term(const Jet& j) { return j.value(); }

Complex make_series_seed(Complex, Complex v) { return v; }
Jet make_series_seed(const Jet& like, Complex v) { return Jet::constant(v, like.order()); }

// cos(X) and sin(X)/X as power series in u = X^2, `terms` terms each.
// Both are entire in u, so a jet argument carries no branch point.
template <typename T>
void cos_sinc_series(const T& u, int terms, T& cos_x, T& sinc_x) {
  T term = make_series_seed(u, 1.0);  // (-u)^k / (2k)!
  cos_x = term;
  sinc_x = term;
  for (int k = 1; k < terms; ++k) {
    term = term * (-u) / Complex{(2.0 * k - 1.0) * (2.0 * k), 0.0};
    cos_x = cos_x + term;
    sinc_x = sinc_x + term / Complex{2.0 * k + 1.0, 0.0};
  }
}

int series_terms(Complex) { return 6; }
int series_terms(const Jet& j) { return j.order() + 8; }

// Jets go through the entire series whenever its terms stay moderate; the
// sqrt-composed form has a branch point at w = -(2 rho)^2 / (8 gamma) whose
// cancellation is lost in double precision at high order.
bool prefer_entire_series(Complex, Complex) { return false; }
bool prefer_entire_series(const Jet&, Complex rho) {
  return std::abs(rho.real()) <= 10.0 && std::abs(rho) <= 100.0;
}

// Enough terms that |u|^k/(2k)! is negligible past the jet order.
int entire_series_terms(const Jet& u) {
  double bound = 0.0;
  for (const auto& a : u.coeffs()) bound += std::abs(a);
  const double log_bound = std::log(std::max(bound, 1.0));
  int k = 1;
  while (k * log_bound - std::lgamma(2.0 * k + 1.0) > -50.0) ++k;
  return k + u.order() + 20;
}
int entire_series_terms(Complex) { return 6; }

template <typename T>
T kernel_trig(const ScatterParams& params, const T& w) {
  using std::cos;
  using std::sin;
  using std::sqrt;
  const Complex rho = params.rho();
  const Complex two_rho = 2.0 * rho;
  const T kl2 = w * Complex{8.0 * params.gamma(), 0.0} + two_rho * two_rho;
  const Complex prefactor = std::exp(kI * rho);
  if (std::abs(constant_term(kl2)) < kKernelSeriesThreshold * kKernelSeriesThreshold) {
    T cos_x, sinc_x;
    cos_sinc_series(kl2 / Complex{4.0, 0.0}, series_terms(w), cos_x, sinc_x);
    return (cos_x - sinc_x * (kI * rho)) * prefactor;
  }
  if (prefer_entire_series(w, rho)) {
    const T u = kl2 / Complex{4.0, 0.0};
    T cos_x, sinc_x;
    cos_sinc_series(u, entire_series_terms(u), cos_x, sinc_x);
    return (cos_x - sinc_x * (kI * rho)) * prefactor;
  }
  const T kl = sqrt(kl2);
  const T half = kl / Complex{2.0, 0.0};
  return (cos(half) - sin(half) / kl * (kI * two_rho)) * prefactor;
}

double binomial(int n, int k) {
  double b = 1.0;
  for (int i = 1; i <= k; ++i) b = b * (n - k + i) / i;
  return b;
}

// s_nm from the Taylor coefficients a_k of the kernel at w = 0.
Complex apply_operator(const Jet& d, int n, int m) {
  // 2^{-(n+m)} sum_p C(n,p) 2^{n-p} D^{p+m} d = sum_p C(n,p) (p+m)! a_{p+m} / 2^{p+m}
  Complex acc{0.0, 0.0};
  for (int p = 0; p <= n; ++p) {
    const int k = p + m;
    const double weight =
        std::exp(std::log(binomial(n, p)) + std::lgamma(k + 1.0) - k * std::log(2.0));
    acc += weight * d[static_cast<std::size_t>(k)];
  }
  return acc;
}

}  // namespace

const char* to_string(KernelRoute route) {
  switch (route) {
    case KernelRoute::TrigClosedForm: return "trig";
    case KernelRoute::RootRepresentation: return "roots";
    case KernelRoute::SeriesExpansion: return "series";
  }
  return "unknown";
}

KernelValue kernel_d_tilde(const ScatterParams& params, Complex w) {
  return {kernel_trig(params, w), KernelRoute::TrigClosedForm};
}

Jet kernel_d_tilde(const ScatterParams& params, const Jet& w) { return kernel_trig(params, w); }

KernelValue kernel_series(const ScatterParams& params, Complex w, int terms) {
  const Complex rho = params.rho();
  if (rho == Complex{0.0, 0.0}) {
    throw std::invalid_argument("kernel_series: rho must be nonzero");
  }
  if (terms < 1) throw std::invalid_argument("kernel_series: need at least one term");
  const auto c = c_coeffs(terms - 1, rho);
  const Complex t = -params.gamma() * w / rho;
  Complex power{1.0, 0.0};  // t^k / k!
  Complex acc{0.0, 0.0};
  for (int k = 0; k < terms; ++k) {
    if (k > 0) power *= t / static_cast<double>(k);
    acc += power * c[static_cast<std::size_t>(k)];
  }
  return {acc, KernelRoute::SeriesExpansion};
}

KernelValue kernel_root_form(const ScatterParams& params, Complex w) {
  const Complex b{params.delta(), params.gamma()};
  const Complex c = -2.0 * params.gamma() * w;
  const Complex sq = std::sqrt(b * b - 4.0 * c);
  // Pick the sign that avoids cancellation in b + sqrt(disc).
  const Complex big = (std::real(std::conj(b) * sq) >= 0.0) ? b + sq : b - sq;
  Complex p1{0.0, 0.0}, p2{0.0, 0.0};
  if (big != Complex{0.0, 0.0}) {
    p1 = -0.5 * big;
    p2 = c / p1;
  }
  const Complex split = p1 - p2;
  if (std::abs(split) < kConfluentThreshold) {
    // (a e^{-ib} - b e^{-ia})/(a-b) with a,b = mid +- y:
    // e^{-i mid} [cos y + i mid sin(y)/y]
    const Complex mid = 0.5 * (p1 + p2);
    const Complex y = 0.5 * split;
    const Complex y2 = y * y;
    const Complex cos_y = 1.0 - y2 / 2.0 + y2 * y2 / 24.0;
    const Complex sinc_y = 1.0 - y2 / 6.0 + y2 * y2 / 120.0;
    return {std::exp(-kI * mid) * (cos_y + kI * mid * sinc_y), KernelRoute::RootRepresentation};
  }
  const Complex value = (-p2 * std::exp(-kI * p1) + p1 * std::exp(-kI * p2)) / split;
  return {value, KernelRoute::RootRepresentation};
}

Complex s_nm_oracle(const ScatterParams& params, int n, int m, int padding) {
  if (n < 0 || m < 0 || padding < 0) {
    throw std::invalid_argument("s_nm_oracle: indices and padding must be >= 0");
  }
  if (params.gamma() == 0.0 && params.delta() == 0.0) {
    throw BranchError("s_nm_oracle: sqrt branch point at gamma = delta = 0");
  }
  const Jet d = kernel_d_tilde(params, Jet::variable(0.0, n + m + padding));
  return apply_operator(d, n, m);
}

CoeffTable oracle_table(const ScatterParams& params, int n_max) {
  if (n_max < 0) throw std::invalid_argument("oracle_table: n_max must be >= 0");
  if (params.gamma() == 0.0 && params.delta() == 0.0) {
    throw BranchError("oracle_table: sqrt branch point at gamma = delta = 0");
  }
  const Jet d = kernel_d_tilde(params, Jet::variable(0.0, n_max));
  CoeffTable table(params, n_max, CoeffRoute::JetOracle);
  for (int n = 0; n <= n_max; ++n) {
    for (int m = 0; n + m <= n_max; ++m) table.set(n, m, apply_operator(d, n, m));
  }
  return table;
}

}  // namespace fcs
