#include "fcs/scattering.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace fcs {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Neumaier-compensated complex accumulator that also tracks sum |term| * err.
class CompensatedSum {
public:
  void add(Complex term, double term_rel_error) {
    add_component(sum_re_, comp_re_, term.real());
    add_component(sum_im_, comp_im_, term.imag());
    error_ += std::abs(term) * term_rel_error;
  }
  Complex value() const { return {sum_re_ + comp_re_, sum_im_ + comp_im_}; }
  double error() const { return error_ + kEps * std::abs(value()); }

private:
  static void add_component(double& sum, double& comp, double x) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x)) {
      comp += (sum - t) + x;
    } else {
      comp += (x - t) + sum;
    }
    sum = t;
  }
  double sum_re_ = 0.0, comp_re_ = 0.0;
  double sum_im_ = 0.0, comp_im_ = 0.0;
  double error_ = 0.0;
};

CoeffBranch select_branch(const ScatterParams& p) {
  if (p.gamma() == 0.0) return CoeffBranch::Uncoupled;
  if (std::abs(p.rho()) > kLargeRhoCutoff) return CoeffBranch::Factorized;
  return CoeffBranch::Exact;
}

Coefficient limit_value(const ScatterParams& p, CoeffBranch branch, int n, int m) {
  if (branch == CoeffBranch::Uncoupled) {
    return {m == 0 ? Complex{1.0, 0.0} : Complex{0.0, 0.0}, 0.0};
  }
  const auto amp = continuum_amplitudes(p);
  const Complex v = std::pow(amp.t, n) * std::pow(amp.r, m);
  const double k = n + m + 1.0;
  return {v, k * k / std::abs(p.rho())};
}

// Shared state for evaluating many s_nm at one parameter point.
struct SumContext {
  SumContext(const ScatterParams& p, int n_max)
      : c(c_coeffs(n_max, p.rho())), log_fact(static_cast<std::size_t>(n_max) + 1) {
    const Complex a = -p.gamma() / (2.0 * p.rho());
    log_abs_a = std::log(std::abs(a));
    arg_a = std::arg(a);
    for (int k = 0; k <= n_max; ++k) log_fact[static_cast<std::size_t>(k)] = std::lgamma(k + 1.0);
  }

  Coefficient evaluate(int n, int m) const {
    CompensatedSum acc;
    for (int p = 0; p <= n; ++p) {
      const int k = p + m;
      const double log_binom = log_fact[static_cast<std::size_t>(n)] -
                               log_fact[static_cast<std::size_t>(p)] -
                               log_fact[static_cast<std::size_t>(n - p)];
      const double log_mag = log_binom + k * log_abs_a;
      const double phase = k * arg_a;
      const Complex term = std::polar(std::exp(log_mag), phase) * c[static_cast<std::size_t>(k)];
      // lgamma/log rounding scales with |log_mag|, phase rounding with |phase|,
      // and the recurrence product behind c_k with k.
      const double rel = kEps * (4.0 + std::abs(log_mag) + std::abs(phase) + k);
      acc.add(term, rel);
    }
    return {acc.value(), acc.error()};
  }

  std::vector<Complex> c;
  std::vector<double> log_fact;
  double log_abs_a = 0.0;
  double arg_a = 0.0;
};

}  // namespace

ScatterParams::ScatterParams(double gamma, double delta) : gamma_(gamma), delta_(delta) {
  if (!std::isfinite(gamma) || !std::isfinite(delta)) {
    throw std::invalid_argument("ScatterParams: gamma and delta must be finite");
  }
  if (gamma < 0.0) throw std::invalid_argument("ScatterParams: gamma must be >= 0");
}

const char* to_string(CoeffRoute route) {
  switch (route) {
    case CoeffRoute::BesselSum: return "bessel_sum";
    case CoeffRoute::JetOracle: return "jet_oracle";
  }
  return "unknown";
}

const char* to_string(CoeffBranch branch) {
  switch (branch) {
    case CoeffBranch::Exact: return "exact";
    case CoeffBranch::Uncoupled: return "uncoupled";
    case CoeffBranch::Factorized: return "factorized";
  }
  return "unknown";
}

double Coefficient::rel_error() const {
  const double mag = std::abs(value);
  if (mag == 0.0) return abs_error == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  return abs_error / mag;
}

CoeffTable::CoeffTable(ScatterParams params, int n_max, CoeffRoute route, CoeffBranch branch)
    : params_(params), n_max_(n_max), route_(route), branch_(branch) {
  if (n_max < 0) throw std::invalid_argument("CoeffTable: n_max must be >= 0");
  const auto count = static_cast<std::size_t>(n_max + 1) * static_cast<std::size_t>(n_max + 2) / 2;
  values_.assign(count, Complex{0.0, 0.0});
  errors_.assign(count, 0.0);
}

std::size_t CoeffTable::index(int n, int m) const {
  if (n < 0 || m < 0 || n + m > n_max_) {
    throw std::out_of_range("CoeffTable: index (" + std::to_string(n) + ", " +
                            std::to_string(m) + ") outside n + m <= " + std::to_string(n_max_));
  }
  // Row n holds m = 0..n_max-n and starts after sum_{i<n} (n_max + 1 - i) entries.
  const auto nn = static_cast<std::size_t>(n);
  const auto rows = nn * static_cast<std::size_t>(n_max_ + 1) - nn * (nn - 1) / 2;
  return rows + static_cast<std::size_t>(m);
}

void CoeffTable::set(int n, int m, Complex value, double abs_error) {
  const auto i = index(n, m);
  values_[i] = value;
  errors_[i] = abs_error;
}

Coefficient s_nm(const ScatterParams& params, int n, int m) {
  if (n < 0 || m < 0) throw std::invalid_argument("s_nm: indices must be >= 0");
  const auto branch = select_branch(params);
  if (branch != CoeffBranch::Exact) return limit_value(params, branch, n, m);
  return SumContext(params, n + m).evaluate(n, m);
}

CoeffTable coeff_table(const ScatterParams& params, int n_max) {
  if (n_max < 0) throw std::invalid_argument("coeff_table: n_max must be >= 0");
  const auto branch = select_branch(params);
  CoeffTable table(params, n_max, CoeffRoute::BesselSum, branch);
  if (branch != CoeffBranch::Exact) {
    for (int n = 0; n <= n_max; ++n) {
      for (int m = 0; n + m <= n_max; ++m) {
        const auto v = limit_value(params, branch, n, m);
        table.set(n, m, v.value, v.abs_error);
      }
    }
    return table;
  }
  const SumContext ctx(params, n_max);
  for (int n = 0; n <= n_max; ++n) {
    for (int m = 0; n + m <= n_max; ++m) {
      const auto v = ctx.evaluate(n, m);
      table.set(n, m, v.value, v.abs_error);
      if (v.ill_conditioned()) table.add_warning({n, m, v.rel_error()});
    }
  }
  return table;
}

ContinuumAmplitudes continuum_amplitudes(const ScatterParams& params) {
  if (params.gamma() == 0.0 && params.delta() == 0.0) {
    throw std::invalid_argument("continuum_amplitudes: gamma and delta cannot both vanish");
  }
  const Complex denom{params.delta(), params.gamma()};
  const Complex t = params.delta() / denom;
  const Complex r = Complex{0.0, -params.gamma()} / denom;
  const double d2 = params.delta() * params.delta();
  const double g2 = params.gamma() * params.gamma();
  return {t, r, d2 / (d2 + g2), g2 / (d2 + g2)};
}

double s_n_forward_asymptotic(const ScatterParams& params, int n) {
  if (n < 1) throw std::invalid_argument("s_n_forward_asymptotic: n must be >= 1");
  if (params.delta() != 0.0) {
    throw std::invalid_argument("s_n_forward_asymptotic: only defined at resonance (delta = 0)");
  }
  return std::cos(std::sqrt(params.gamma() * n / 2.0));
}

}  // namespace fcs
