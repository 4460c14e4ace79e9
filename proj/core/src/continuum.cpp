#include "fcs/continuum.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace fcs {
namespace {

constexpr double kNegativityFloor = -1e-9;
constexpr std::size_t kMaxAmplitudes = 200000;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void validate_T(double T) {
  if (!(T >= 0.0 && T <= 1.0)) {
    throw std::invalid_argument("transmission T must lie in [0, 1], got " + std::to_string(T));
  }
}

// z^n - 1 for z = e^{i lambda}
Complex fugacity_minus_one(double lambda, int n) {
  const double theta = lambda * n;
  const double half = std::sin(0.5 * theta);
  return {-2.0 * half * half, std::sin(theta)};
}

// exp(x) - 1 for complex x
Complex complex_expm1(Complex x) {
  const double a = x.real(), b = x.imag();
  const double half = std::sin(0.5 * b);
  return {std::expm1(a) * std::cos(b) - 2.0 * half * half, std::exp(a) * std::sin(b)};
}

// ln(T^n) with the convention 0^0 = 1; -inf for 0^n, n > 0.
double log_power(double base, int n) {
  if (n == 0) return 0.0;
  if (base == 0.0) return -std::numeric_limits<double>::infinity();
  return n * std::log(base);
}

double log_binomial(int n, int k) {
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

Complex coherent_F(double nbar, double T, double lambda_r, double lambda_l) {
  const double n_r = nbar * T;
  const double n_l = nbar * (1.0 - T);
  const Complex f_r = complex_expm1(n_r * fugacity_minus_one(lambda_r, 1));
  const Complex f_l = complex_expm1(n_l * fugacity_minus_one(lambda_l, 1));
  return 1.0 + std::exp(-n_l) * f_r + std::exp(-n_r) * f_l + f_r * f_l;
}

Complex fock_F(int N, double T, double lambda_r, double lambda_l) {
  const double R = 1.0 - T;
  Complex acc = 1.0 + fugacity_minus_one(lambda_r, N) * std::pow(T, N) +
                fugacity_minus_one(lambda_l, N) * std::pow(R, N);
  for (int n = 1; n < N; ++n) {
    const double w = std::exp(log_binomial(N, n) + log_power(T, n) + log_power(R, N - n));
    acc += w * fugacity_minus_one(lambda_r, n) * fugacity_minus_one(lambda_l, N - n);
  }
  return acc;
}

Complex general_F(const std::vector<double>& p, double T, double lambda_r, double lambda_l) {
  const double R = 1.0 - T;
  const int size = static_cast<int>(p.size());
  Complex acc{1.0, 0.0};
  for (int n = 1; n < size; ++n) {
    const double pn = p[static_cast<std::size_t>(n)];
    if (pn == 0.0) continue;
    acc += fugacity_minus_one(lambda_r, n) * (pn * std::exp(log_power(T, n)));
    acc += fugacity_minus_one(lambda_l, n) * (pn * std::exp(log_power(R, n)));
  }
  if (lambda_r != 0.0 && lambda_l != 0.0) {
    for (int n = 1; n < size; ++n) {
      const Complex zr = fugacity_minus_one(lambda_r, n);
      for (int m = 1; n + m < size; ++m) {
        const double pk = p[static_cast<std::size_t>(n + m)];
        if (pk == 0.0) continue;
        const double w =
            std::exp(log_binomial(n + m, n) + log_power(T, n) + log_power(R, m)) * pk;
        acc += w * zr * fugacity_minus_one(lambda_l, m);
      }
    }
  }
  return acc;
}

std::vector<double> input_distribution(const InitialState& state, int n_max) {
  return std::visit(
      Overloaded{
          [&](const CoherentState& s) {
            std::vector<double> p(static_cast<std::size_t>(n_max) + 1);
            for (int n = 0; n <= n_max; ++n) p[static_cast<std::size_t>(n)] = poisson_weight(s.nbar, n);
            return p;
          },
          [&](const FockState& s) {
            std::vector<double> p(static_cast<std::size_t>(std::max(n_max, s.n)) + 1, 0.0);
            p[static_cast<std::size_t>(s.n)] = 1.0;
            return p;
          },
          [&](const SqueezedState& s) {
            return CustomState(squeezed_amplitudes(s.magnitude, s.theta)).number_distribution();
          },
          [&](const CustomState& s) { return s.number_distribution(); },
      },
      state);
}

void fill_weights(CountDistribution& dist, const std::vector<double>& p_in, double T_eff, int n_max) {
  const auto size = static_cast<std::size_t>(n_max) + 1;
  dist.raw.assign(size, 0.0);
  dist.weight.assign(size, 0.0);
  long double tail = 0.0L;
  for (std::size_t n = 0; n < p_in.size(); ++n) {
    if (n < size) {
      dist.weight[n] = std::exp(log_power(T_eff, static_cast<int>(n)));
      dist.raw[n] = p_in[n] * dist.weight[n];
    } else {
      tail += p_in[n];
    }
  }
  dist.truncation_bound = static_cast<double>(tail);
}

double poisson_tail(double nbar, int n_max) {
  long double tail = 0.0L;
  if (nbar == 0.0) return 0.0;
  for (int n = n_max + 1;; ++n) {
    const double w = poisson_weight(nbar, n);
    tail += w;
    if (n > nbar && (w < 1e-300 || w < 1e-17 * static_cast<double>(tail))) break;
  }
  return static_cast<double>(tail);
}

CountDistribution dft_distribution(const CustomState& state, double T_eff, int n_max) {
  const auto p_in = state.number_distribution();
  const int degree = static_cast<int>(p_in.size()) - 1;
  const int nodes = std::max(2 * (n_max + 1), degree + 1);
  std::vector<Complex> samples(static_cast<std::size_t>(nodes));
  const double step = 2.0 * std::numbers::pi / nodes;
  for (int j = 0; j < nodes; ++j) {
    samples[static_cast<std::size_t>(j)] = general_F(p_in, T_eff, step * j, 0.0);
  }

  CountDistribution dist;
  dist.probs.assign(static_cast<std::size_t>(n_max) + 1, 0.0);
  for (int k = 0; k <= n_max; ++k) {
    Complex acc{0.0, 0.0};
    for (int j = 0; j < nodes; ++j) {
      const long long jk = (static_cast<long long>(j) * k) % nodes;
      acc += samples[static_cast<std::size_t>(j)] * std::polar(1.0, -step * static_cast<double>(jk));
    }
    const double p = acc.real() / nodes;
    if (p < kNegativityFloor) {
      throw NumericalError("continuum_distribution: inverse DFT gives p(" + std::to_string(k) +
                           ") = " + std::to_string(p) + "; inconsistent state vector");
    }
    dist.probs[static_cast<std::size_t>(k)] = p;
  }
  fill_weights(dist, p_in, T_eff, n_max);
  return dist;
}

}  // namespace

CustomState::CustomState(std::vector<Complex> amplitudes) : amps_(std::move(amplitudes)) {
  if (amps_.empty()) throw NormalizationError("custom state: amplitude vector is empty");
  long double norm = 0.0L;
  for (const auto& a : amps_) {
    if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
      throw NormalizationError("custom state: amplitudes must be finite");
    }
    norm += std::norm(a);
  }
  if (std::abs(static_cast<double>(norm) - 1.0) > kTolerance) {
    throw NormalizationError("custom state: sum |psi_n|^2 = " +
                             std::to_string(static_cast<double>(norm)) + ", expected 1");
  }
}

std::vector<double> CustomState::number_distribution() const {
  std::vector<double> p(amps_.size());
  for (std::size_t n = 0; n < amps_.size(); ++n) p[n] = std::norm(amps_[n]);
  return p;
}

void validate(const InitialState& state) {
  std::visit(Overloaded{
                 [](const CoherentState& s) {
                   if (!std::isfinite(s.nbar) || s.nbar < 0.0) {
                     throw std::invalid_argument("coherent state: nbar must be finite and >= 0");
                   }
                 },
                 [](const FockState& s) {
                   if (s.n < 0) throw std::invalid_argument("Fock state: N must be >= 0");
                 },
                 [](const SqueezedState& s) {
                   if (!std::isfinite(s.magnitude) || s.magnitude < 0.0 || !std::isfinite(s.theta)) {
                     throw std::invalid_argument("squeezed state: need finite |zeta| >= 0 and theta");
                   }
                 },
                 [](const CustomState&) {},
             },
             state);
}

std::vector<Complex> squeezed_amplitudes(double magnitude, double theta) {
  validate(SqueezedState{magnitude, theta});
  if (magnitude == 0.0) return {Complex{1.0, 0.0}};
  const double log_t = std::log(std::tanh(magnitude));
  const double log_cosh = std::log(std::cosh(magnitude));
  std::vector<Complex> amps;
  long double mass = 0.0L;
  for (int n = 0;; ++n) {
    // (2n-1)!! / sqrt((2n)!) = sqrt((2n)!) / (2^n n!)
    const double log_mag = 0.5 * std::lgamma(2.0 * n + 1.0) - n * std::log(2.0) -
                           std::lgamma(n + 1.0) + n * log_t - 0.5 * log_cosh;
    const Complex psi = std::polar(std::exp(log_mag), n * (theta + std::numbers::pi));
    if (n > 0) amps.emplace_back(0.0, 0.0);
    amps.push_back(psi);
    mass += std::norm(psi);
    if (1.0L - mass < 1e-15L) break;
    if (amps.size() > kMaxAmplitudes) {
      throw std::invalid_argument("squeezed state: |zeta| too large for amplitude truncation");
    }
  }
  return amps;
}

CustomState make_custom(const InitialState& state, int min_length) {
  validate(state);
  return std::visit(
      Overloaded{
          [&](const CoherentState& s) {
            std::vector<Complex> amps;
            long double mass = 0.0L;
            for (int n = 0;; ++n) {
              const double w = poisson_weight(s.nbar, n);
              amps.emplace_back(std::sqrt(w), 0.0);
              mass += w;
              if (n + 1 >= min_length && n > s.nbar && 1.0L - mass < 1e-15L) break;
            }
            return CustomState(std::move(amps));
          },
          [&](const FockState& s) {
            std::vector<Complex> amps(static_cast<std::size_t>(std::max(s.n + 1, min_length)));
            amps[static_cast<std::size_t>(s.n)] = 1.0;
            return CustomState(std::move(amps));
          },
          [&](const SqueezedState& s) {
            auto amps = squeezed_amplitudes(s.magnitude, s.theta);
            if (static_cast<int>(amps.size()) < min_length) amps.resize(static_cast<std::size_t>(min_length));
            return CustomState(std::move(amps));
          },
          [&](const CustomState& s) { return s; },
      },
      state);
}

Complex continuum_F(const InitialState& state, double T, double lambda_r, double lambda_l) {
  validate_T(T);
  validate(state);
  return std::visit(
      Overloaded{
          [&](const CoherentState& s) { return coherent_F(s.nbar, T, lambda_r, lambda_l); },
          [&](const FockState& s) {
            if (s.n == 0) return Complex{1.0, 0.0};
            return fock_F(s.n, T, lambda_r, lambda_l);
          },
          [&](const auto&) { return general_F(input_distribution(state, 0), T, lambda_r, lambda_l); },
      },
      state);
}

CountDistribution continuum_distribution(const InitialState& state, double T, Channel channel,
                                         int n_max) {
  validate_T(T);
  validate(state);
  if (n_max < 0) throw std::invalid_argument("continuum_distribution: n_max must be >= 0");
  if (channel == Channel::JointMarginal) {
    throw std::invalid_argument("continuum_distribution: choose Forward or Backward");
  }
  const double T_eff = channel == Channel::Forward ? T : 1.0 - T;
  const auto size = static_cast<std::size_t>(n_max) + 1;

  CountDistribution dist = std::visit(
      Overloaded{
          [&](const CoherentState& s) {
            CountDistribution d;
            const double n_r = s.nbar * T_eff;
            const double n_l = s.nbar - n_r;
            const double keep = std::exp(-n_l);
            d.probs.assign(size, 0.0);
            for (int n = 1; n <= n_max; ++n) {
              d.probs[static_cast<std::size_t>(n)] = keep * poisson_weight(n_r, n);
            }
            d.probs[0] = -std::expm1(-n_l) + keep * std::exp(-n_r);
            fill_weights(d, input_distribution(state, n_max), T_eff, n_max);
            d.truncation_bound = poisson_tail(s.nbar, n_max);
            return d;
          },
          [&](const FockState& s) {
            if (n_max < s.n) {
              throw std::invalid_argument("continuum_distribution: n_max must be >= N for Fock(N)");
            }
            CountDistribution d;
            d.probs.assign(size, 0.0);
            const double all = std::pow(T_eff, s.n);
            d.probs[static_cast<std::size_t>(s.n)] += all;
            if (s.n > 0) d.probs[0] += 1.0 - all;
            fill_weights(d, input_distribution(state, n_max), T_eff, n_max);
            return d;
          },
          [&](const auto&) { return dft_distribution(make_custom(state), T_eff, n_max); },
      },
      state);
  dist.channel = channel;
  dist.zero_bucket_mass = dist.probs[0];
  dist.norm_defect = std::abs(1.0 - dist.total());
  return dist;
}

SqueezedComparison squeezed_distribution(double magnitude, double theta, double T, int n_max) {
  validate_T(T);
  validate(SqueezedState{magnitude, theta});
  SqueezedComparison out;
  out.general = continuum_distribution(SqueezedState{magnitude, theta}, T, Channel::Forward, n_max);

  const double tanh_prime = T * T * std::tanh(magnitude);
  out.zeta_prime = std::atanh(tanh_prime);
  out.d_zeta = std::cosh(out.zeta_prime) / std::cosh(magnitude);

  CountDistribution& closed = out.closed_form;
  closed.channel = Channel::Forward;
  closed.probs.assign(static_cast<std::size_t>(n_max) + 1, 0.0);
  const double log_cosh_prime = std::log(std::cosh(out.zeta_prime));
  for (int n = 0; 2 * n <= n_max; ++n) {
    double p_prime;
    if (n == 0) {
      p_prime = std::exp(-log_cosh_prime);
    } else if (tanh_prime == 0.0) {
      p_prime = 0.0;
    } else {
      p_prime = std::exp(std::lgamma(2.0 * n + 1.0) - 2.0 * n * std::log(2.0) -
                         2.0 * std::lgamma(n + 1.0) + 2.0 * n * std::log(tanh_prime) -
                         log_cosh_prime);
    }
    closed.probs[static_cast<std::size_t>(2 * n)] = out.d_zeta * p_prime;
  }
  closed.probs[0] += 1.0 - out.d_zeta;
  closed.raw = out.general.raw;
  closed.weight = out.general.weight;
  closed.zero_bucket_mass = closed.probs[0];
  closed.norm_defect = std::abs(1.0 - closed.total());

  out.discrepancy.resize(closed.probs.size());
  for (std::size_t n = 0; n < closed.probs.size(); ++n) {
    out.discrepancy[n] = closed.probs[n] - out.general.probs[n];
    out.max_discrepancy = std::max(out.max_discrepancy, std::abs(out.discrepancy[n]));
  }
  return out;
}

}  // namespace fcs
