#include "fcs/counting.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace fcs {
namespace {

constexpr double kZeroBucketFloor = -1e-9;

void validate_nbar(double nbar) {
  if (!std::isfinite(nbar) || nbar < 0.0) {
    throw std::invalid_argument("nbar must be finite and >= 0");
  }
}

int resolve(Truncation n_max, double nbar) {
  const int nm = n_max.value_or(auto_n_max(nbar));
  if (nm < 0) throw std::invalid_argument("n_max must be >= 0");
  return nm;
}

// ln of e^{-N} N^k / (n! m!) with k = n + m; -inf when the weight vanishes.
double log_pair_weight(double nbar, int n, int m) {
  if (nbar == 0.0) {
    return (n + m == 0) ? 0.0 : -std::numeric_limits<double>::infinity();
  }
  return -nbar + (n + m) * std::log(nbar) - std::lgamma(n + 1.0) - std::lgamma(m + 1.0);
}

double weighted_abs2(double log_weight, Complex s) {
  const double mag = std::abs(s);
  if (mag == 0.0 || std::isinf(log_weight)) return 0.0;
  return std::exp(log_weight + 2.0 * std::log(mag));
}

// Input Poisson mass strictly beyond n_max.
double poisson_tail(double nbar, int n_max) {
  if (nbar == 0.0) return 0.0;
  long double tail = 0.0L;
  for (int n = n_max + 1;; ++n) {
    const double w = poisson_weight(nbar, n);
    tail += w;
    if (n > nbar && (w < 1e-300 || w < 1e-17 * static_cast<double>(tail))) break;
  }
  return static_cast<double>(tail);
}

// z^n - 1 for z = e^{i lambda}, without cancellation near lambda n = 0.
Complex fugacity_minus_one(double lambda, int n) {
  const double theta = lambda * n;
  const double half = std::sin(0.5 * theta);
  return {-2.0 * half * half, std::sin(theta)};
}

std::vector<double> build_cross(const CoeffTable& table, double nbar, int n_max) {
  const auto dim = static_cast<std::size_t>(n_max) + 1;
  std::vector<double> cross(dim * dim, 0.0);
  for (int n = 1; n <= n_max; ++n) {
    for (int m = 1; m <= n_max; ++m) {
      cross[static_cast<std::size_t>(n) * dim + static_cast<std::size_t>(m)] =
          weighted_abs2(log_pair_weight(nbar, n, m), table(n, m));
    }
  }
  return cross;
}

}  // namespace

const char* to_string(Channel channel) {
  switch (channel) {
    case Channel::Forward: return "forward";
    case Channel::Backward: return "backward";
    case Channel::JointMarginal: return "joint_marginal";
  }
  return "unknown";
}

double CountDistribution::total() const {
  long double acc = 0.0L;
  for (double p : probs) acc += p;
  return static_cast<double>(acc);
}

int auto_n_max(double nbar) {
  validate_nbar(nbar);
  return static_cast<int>(std::ceil(nbar + 10.0 * std::sqrt(nbar) + 25.0));
}

double poisson_weight(double nbar, int n) {
  validate_nbar(nbar);
  if (n < 0) throw std::invalid_argument("poisson_weight: n must be >= 0");
  if (nbar == 0.0) return n == 0 ? 1.0 : 0.0;
  return std::exp(-nbar + n * std::log(nbar) - std::lgamma(n + 1.0));
}

CountDistribution channel_distribution(const ScatterParams& params, double nbar,
                                       Channel channel, Truncation n_max) {
  validate_nbar(nbar);
  const int nm = resolve(n_max, nbar);
  return channel_distribution(coeff_table(params, nm), nbar, channel, nm);
}

CountDistribution channel_distribution(const CoeffTable& table, double nbar, Channel channel,
                                       int n_max) {
  validate_nbar(nbar);
  if (channel == Channel::JointMarginal) {
    throw std::invalid_argument("channel_distribution: choose Forward or Backward");
  }
  if (n_max < 0 || n_max > table.n_max()) {
    throw std::invalid_argument("channel_distribution: n_max outside the coefficient table");
  }
  CountDistribution dist;
  dist.channel = channel;
  const auto size = static_cast<std::size_t>(n_max) + 1;
  dist.probs.assign(size, 0.0);
  dist.raw.assign(size, 0.0);
  dist.weight.assign(size, 0.0);

  long double occupied = 0.0L;
  double error = 0.0;
  for (int n = 0; n <= n_max; ++n) {
    const auto k = static_cast<std::size_t>(n);
    const bool forward = channel == Channel::Forward;
    const Complex s = forward ? table.forward(n) : table.backward(n);
    const double delta = forward ? table.error_bound(n, 0) : table.error_bound(0, n);
    const double p_in = poisson_weight(nbar, n);
    dist.weight[k] = std::norm(s);
    dist.raw[k] = p_in * dist.weight[k];
    if (n >= 1) {
      dist.probs[k] = dist.raw[k];
      occupied += dist.raw[k];
      error += p_in * (2.0 * std::abs(s) * delta + delta * delta);
    }
  }
  dist.zero_bucket_mass = static_cast<double>(1.0L - occupied);
  dist.probs[0] = dist.zero_bucket_mass;
  if (dist.zero_bucket_mass < kZeroBucketFloor) {
    throw NumericalError("channel_distribution: zero bucket " +
                         std::to_string(dist.zero_bucket_mass) +
                         " is negative; |s_n| exceeds 1 numerically");
  }
  dist.norm_defect = std::abs(1.0 - dist.total());
  dist.truncation_bound = poisson_tail(nbar, n_max);
  dist.probability_error_bound = 2.0 * error;
  return dist;
}

JointDistribution::JointDistribution(ScatterParams params, double nbar, int n_max)
    : params_(params), nbar_(nbar), n_max_(n_max) {
  if (n_max < 0) throw std::invalid_argument("JointDistribution: n_max must be >= 0");
  const auto dim = static_cast<std::size_t>(n_max) + 1;
  cells_.assign(dim * dim, 0.0);
}

std::size_t JointDistribution::index(int n, int m) const {
  if (n < 0 || m < 0 || n > n_max_ || m > n_max_) {
    throw std::out_of_range("JointDistribution: index out of range");
  }
  return static_cast<std::size_t>(n) * (static_cast<std::size_t>(n_max_) + 1) +
         static_cast<std::size_t>(m);
}

std::vector<double> JointDistribution::forward_marginal() const {
  std::vector<double> out(static_cast<std::size_t>(n_max_) + 1, 0.0);
  for (int n = 0; n <= n_max_; ++n) {
    long double acc = 0.0L;
    for (int m = 0; m <= n_max_; ++m) acc += (*this)(n, m);
    out[static_cast<std::size_t>(n)] = static_cast<double>(acc);
  }
  return out;
}

std::vector<double> JointDistribution::backward_marginal() const {
  std::vector<double> out(static_cast<std::size_t>(n_max_) + 1, 0.0);
  for (int m = 0; m <= n_max_; ++m) {
    long double acc = 0.0L;
    for (int n = 0; n <= n_max_; ++n) acc += (*this)(n, m);
    out[static_cast<std::size_t>(m)] = static_cast<double>(acc);
  }
  return out;
}

double JointDistribution::total_mass() const {
  long double acc = 0.0L;
  for (double c : cells_) acc += c;
  return static_cast<double>(acc);
}

double JointDistribution::min_cell() const { return *std::min_element(cells_.begin(), cells_.end()); }

JointDistribution joint_distribution(const ScatterParams& params, double nbar, Truncation n_max) {
  validate_nbar(nbar);
  const int nm = resolve(n_max, nbar);
  const auto table = coeff_table(params, 2 * nm);
  const auto cross = build_cross(table, nbar, nm);
  const auto dim = static_cast<std::size_t>(nm) + 1;

  JointDistribution joint(params, nbar, nm);
  long double zero = 1.0L;
  for (int n = 1; n <= nm; ++n) {
    const double a = poisson_weight(nbar, n) * std::norm(table.forward(n));
    const double b = poisson_weight(nbar, n) * std::norm(table.backward(n));
    long double row = 0.0L, col = 0.0L;
    for (int k = 1; k <= nm; ++k) {
      row += cross[static_cast<std::size_t>(n) * dim + static_cast<std::size_t>(k)];
      col += cross[static_cast<std::size_t>(k) * dim + static_cast<std::size_t>(n)];
      joint(n, k) = cross[static_cast<std::size_t>(n) * dim + static_cast<std::size_t>(k)];
    }
    joint(n, 0) = static_cast<double>(a - row);
    joint(0, n) = static_cast<double>(b - col);
    zero -= a + b;
    zero += row;
  }
  joint(0, 0) = static_cast<double>(zero);
  if (joint(0, 0) < kZeroBucketFloor) {
    throw NumericalError("joint_distribution: joint zero cell is negative");
  }
  return joint;
}

GeneratingFunction::GeneratingFunction(const ScatterParams& params, double nbar,
                                       Truncation n_max) {
  validate_nbar(nbar);
  n_max_ = resolve(n_max, nbar);
  const auto table = coeff_table(params, 2 * n_max_);
  const auto dim = static_cast<std::size_t>(n_max_) + 1;
  forward_.assign(dim, 0.0);
  backward_.assign(dim, 0.0);
  for (int n = 1; n <= n_max_; ++n) {
    forward_[static_cast<std::size_t>(n)] = poisson_weight(nbar, n) * std::norm(table.forward(n));
    backward_[static_cast<std::size_t>(n)] = poisson_weight(nbar, n) * std::norm(table.backward(n));
  }
  cross_ = build_cross(table, nbar, n_max_);
}

Complex GeneratingFunction::operator()(double lambda_r, double lambda_l) const {
  const auto dim = static_cast<std::size_t>(n_max_) + 1;
  std::vector<Complex> zr(dim), zl(dim);
  for (int n = 0; n <= n_max_; ++n) {
    zr[static_cast<std::size_t>(n)] = fugacity_minus_one(lambda_r, n);
    zl[static_cast<std::size_t>(n)] = fugacity_minus_one(lambda_l, n);
  }
  Complex acc{1.0, 0.0};
  for (std::size_t n = 1; n < dim; ++n) acc += zr[n] * forward_[n] + zl[n] * backward_[n];
  if (lambda_r != 0.0 && lambda_l != 0.0) {
    for (std::size_t n = 1; n < dim; ++n) {
      Complex row{0.0, 0.0};
      for (std::size_t m = 1; m < dim; ++m) row += zl[m] * cross_[n * dim + m];
      acc += zr[n] * row;
    }
  }
  return acc;
}

double GeneratingFunction::at_real_z(double z_r, double z_l) const {
  const auto dim = static_cast<std::size_t>(n_max_) + 1;
  std::vector<double> zr(dim), zl(dim);
  for (std::size_t n = 0; n < dim; ++n) {
    zr[n] = std::pow(z_r, static_cast<double>(n)) - 1.0;
    zl[n] = std::pow(z_l, static_cast<double>(n)) - 1.0;
  }
  long double acc = 1.0L;
  for (std::size_t n = 1; n < dim; ++n) {
    acc += zr[n] * forward_[n] + zl[n] * backward_[n];
    for (std::size_t m = 1; m < dim; ++m) acc += zr[n] * zl[m] * cross_[n * dim + m];
  }
  return static_cast<double>(acc);
}

long double GeneratingFunction::log_mgf(long double u_r, long double u_l) const {
  const auto dim = static_cast<std::size_t>(n_max_) + 1;
  long double acc = 0.0L;
  for (std::size_t n = 1; n < dim; ++n) {
    const long double er = std::expm1(u_r * static_cast<long double>(n));
    const long double el = std::expm1(u_l * static_cast<long double>(n));
    acc += er * forward_[n] + el * backward_[n];
    if (u_r != 0.0L && u_l != 0.0L) {
      for (std::size_t m = 1; m < dim; ++m) {
        acc += er * std::expm1(u_l * static_cast<long double>(m)) * cross_[n * dim + m];
      }
    }
  }
  return std::log1p(acc);
}

Complex evaluate_F(const ScatterParams& params, double nbar, double lambda_r, double lambda_l,
                   Truncation n_max) {
  return GeneratingFunction(params, nbar, n_max)(lambda_r, lambda_l);
}

double evaluate_F_real(const ScatterParams& params, double nbar, double z_r, double z_l,
                       Truncation n_max) {
  if (!(z_r >= -1.0 && z_r <= 1.0 && z_l >= -1.0 && z_l <= 1.0)) {
    throw std::invalid_argument("evaluate_F_real: real fugacities must lie in [-1, 1]");
  }
  return GeneratingFunction(params, nbar, n_max).at_real_z(z_r, z_l);
}

MomentReport moments(const std::vector<double>& probs) {
  long double total = 0.0L, mean = 0.0L;
  for (std::size_t n = 0; n < probs.size(); ++n) {
    total += probs[n];
    mean += static_cast<long double>(n) * probs[n];
  }
  if (total <= 0.0L) throw std::invalid_argument("moments: distribution has no mass");
  mean /= total;
  long double m2 = 0.0L, m3 = 0.0L, m4 = 0.0L;
  for (std::size_t n = 0; n < probs.size(); ++n) {
    const long double d = static_cast<long double>(n) - mean;
    const long double d2 = d * d;
    m2 += d2 * probs[n];
    m3 += d2 * d * probs[n];
    m4 += d2 * d2 * probs[n];
  }
  m2 /= total;
  m3 /= total;
  m4 /= total;

  MomentReport r;
  r.mean = static_cast<double>(mean);
  r.variance = std::max(0.0, static_cast<double>(m2));
  r.cumulants = {r.mean, static_cast<double>(m2), static_cast<double>(m3),
                 static_cast<double>(m4 - 3.0L * m2 * m2)};
  r.fano_defined = r.mean >= 1e-14;
  if (r.fano_defined) {
    r.fano = r.variance / r.mean;
    r.mandel_q = r.fano - 1.0;
  } else {
    r.fano = std::numeric_limits<double>::quiet_NaN();
    r.mandel_q = std::numeric_limits<double>::quiet_NaN();
  }
  return r;
}

MomentReport moments(const CountDistribution& dist) { return moments(dist.probs); }

}  // namespace fcs
