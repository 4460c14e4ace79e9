#pragma once

#include <array>
#include <optional>
#include <vector>

#include "fcs/scattering.hpp"

namespace fcs {

enum class Channel { Forward, Backward, JointMarginal };

const char* to_string(Channel channel);

/// Photon-number distribution of one counted mode.
///
/// probs[0] is the normalization-completing bucket 1 - sum_{n>=1} probs[n];
/// raw[0] keeps the bare product p_alpha(0)|s_0|^2 for comparison.
struct CountDistribution {
  Channel channel = Channel::Forward;
  std::vector<double> probs;
  std::vector<double> raw;              // p_in(n) * weight(n), n = 0..n_max
  std::vector<double> weight;           // |s_n|^2 (or T^n); may be empty
  double zero_bucket_mass = 0.0;
  double norm_defect = 0.0;             // |1 - sum probs|
  double truncation_bound = 0.0;        // input mass beyond n_max
  double probability_error_bound = 0.0; // propagated coefficient error

  int n_max() const { return static_cast<int>(probs.size()) - 1; }
  double total() const;
};

/// Coefficients of z_r^n z_l^m in F_alpha, for 0 <= n, m <= n_max.
///
/// Cells with n, m >= 1 are e^{-N} N^{n+m}/(n! m!) |s_nm|^2. The n = 0 and
/// m = 0 edges complete the one-channel marginals, and the (0,0) cell closes
/// the total mass. The edge cells are not sign-definite.
class JointDistribution {
public:
  JointDistribution(ScatterParams params, double nbar, int n_max);

  int n_max() const { return n_max_; }
  double nbar() const { return nbar_; }
  const ScatterParams& params() const { return params_; }

  double operator()(int n, int m) const { return cells_[index(n, m)]; }
  double& operator()(int n, int m) { return cells_[index(n, m)]; }

  std::vector<double> forward_marginal() const;
  std::vector<double> backward_marginal() const;
  double total_mass() const;
  double min_cell() const;

private:
  std::size_t index(int n, int m) const;

  ScatterParams params_;
  double nbar_;
  int n_max_;
  std::vector<double> cells_;
};

struct MomentReport {
  double mean = 0.0;
  double variance = 0.0;
  double fano = 0.0;
  double mandel_q = 0.0;
  bool fano_defined = false;
  std::array<double, 4> cumulants{};  // kappa_1..kappa_4
};

/// Truncation: nullopt means automatic, ceil(N + 10 sqrt(N) + 25).
using Truncation = std::optional<int>;

int auto_n_max(double nbar);

/// e^{-N} N^n / n! evaluated in log space; exactly 1 at (0, 0).
double poisson_weight(double nbar, int n);

/// Forward (s_n0) or backward (s_0n) distribution for coherent input.
/// Throws NumericalError when the completed zero bucket falls below -1e-9.
CountDistribution channel_distribution(const ScatterParams& params, double nbar,
                                       Channel channel, Truncation n_max = std::nullopt);

/// Same, reusing a coefficient table with table.n_max() >= n_max.
CountDistribution channel_distribution(const CoeffTable& table, double nbar,
                                       Channel channel, int n_max);

JointDistribution joint_distribution(const ScatterParams& params, double nbar,
                                     Truncation n_max = std::nullopt);

/// Truncated generating function F_alpha(lambda_r, lambda_l) for one
/// (params, N) point. The expansion weights are computed once on construction.
class GeneratingFunction {
public:
  GeneratingFunction(const ScatterParams& params, double nbar, Truncation n_max = std::nullopt);

  int n_max() const { return n_max_; }

  /// F at fugacities z = e^{i lambda}.
  Complex operator()(double lambda_r, double lambda_l) const;
  /// F at real fugacities z_r, z_l (power-series form).
  double at_real_z(double z_r, double z_l) const;
  /// ln F at lambda = -i u (moment generating form), evaluated in extended
  /// precision through expm1/log1p.
  long double log_mgf(long double u_r, long double u_l) const;

private:
  int n_max_;
  std::vector<double> forward_;   // A_n = p(n)|s_n0|^2
  std::vector<double> backward_;  // B_m = p(m)|s_0m|^2
  std::vector<double> cross_;     // C_nm, (n_max+1)^2, n, m >= 1 used
};

Complex evaluate_F(const ScatterParams& params, double nbar, double lambda_r, double lambda_l,
                   Truncation n_max = std::nullopt);

/// Real-fugacity variant, z in [-1, 1].
double evaluate_F_real(const ScatterParams& params, double nbar, double z_r, double z_l,
                       Truncation n_max = std::nullopt);

/// Moments and cumulants up to order 4 by direct summation.
MomentReport moments(const CountDistribution& dist);
MomentReport moments(const std::vector<double>& probs);

/// Cumulants kappa_1..kappa_4 from central finite differences of a cumulant
/// generating function K(u) at u = 0, step h, one Richardson extrapolation
/// between steps h and 2h.
template <typename K>
std::array<double, 4> cumulants_by_finite_difference(const K& cgf, long double h = 1e-3L);

}  // namespace fcs

#include "fcs/counting_inl.hpp"
