#pragma once

#include <cstddef>
#include <vector>

#include "fcs/special_functions.hpp"

namespace fcs {

/// Dimensionless scattering parameters of the emitter.
///
/// gamma = pi g^2 L is the coupling, delta = (k0 - Delta) L the detuning.
/// rho = (delta + i gamma)/2 is derived and always consistent with both.
class ScatterParams {
public:
  /// Throws std::invalid_argument if gamma < 0 or either value is not finite.
  ScatterParams(double gamma, double delta);

  double gamma() const { return gamma_; }
  double delta() const { return delta_; }
  Complex rho() const { return {0.5 * delta_, 0.5 * gamma_}; }

private:
  double gamma_;
  double delta_;
};

/// Which computation produced a coefficient table.
enum class CoeffRoute { BesselSum, JetOracle };

/// Which branch of the Bessel-sum evaluation was taken.
enum class CoeffBranch {
  Exact,          // binomial Bessel sum
  Uncoupled,      // gamma == 0: s_n0 = 1, all else 0
  Factorized,     // |rho| beyond the recurrence cutoff: s_nm = t^n r^m
};

const char* to_string(CoeffRoute route);
const char* to_string(CoeffBranch branch);

/// Coefficients whose running error estimate exceeds this (relative) are flagged.
inline constexpr double kConditioningTolerance = 1e-8;
/// |rho| above which the factorized limit replaces the Bessel sum.
inline constexpr double kLargeRhoCutoff = 1e8;

struct Coefficient {
  Complex value;
  double abs_error = 0.0;  // running error estimate of the compensated sum

  double rel_error() const;
  bool ill_conditioned() const { return rel_error() > kConditioningTolerance; }
};

struct ConditioningWarning {
  int n;
  int m;
  double rel_error;
};

/// Dense triangular table of s_nm for n, m >= 0 with n + m <= n_max.
class CoeffTable {
public:
  CoeffTable(ScatterParams params, int n_max, CoeffRoute route,
             CoeffBranch branch = CoeffBranch::Exact);

  int n_max() const { return n_max_; }
  const ScatterParams& params() const { return params_; }
  CoeffRoute route() const { return route_; }
  CoeffBranch branch() const { return branch_; }

  /// s_nm; throws std::out_of_range when n + m > n_max.
  Complex operator()(int n, int m) const { return values_[index(n, m)]; }
  double error_bound(int n, int m) const { return errors_[index(n, m)]; }
  Complex forward(int n) const { return (*this)(n, 0); }
  Complex backward(int m) const { return (*this)(0, m); }

  void set(int n, int m, Complex value, double abs_error = 0.0);
  void add_warning(ConditioningWarning w) { warnings_.push_back(w); }
  const std::vector<ConditioningWarning>& warnings() const { return warnings_; }
  std::size_t size() const { return values_.size(); }

private:
  std::size_t index(int n, int m) const;

  ScatterParams params_;
  int n_max_;
  CoeffRoute route_;
  CoeffBranch branch_;
  std::vector<Complex> values_;
  std::vector<double> errors_;
  std::vector<ConditioningWarning> warnings_;
};

/// s_nm = sum_p C(n,p) (-gamma/2rho)^{p+m} c_{p+m}(rho), compensated sum with
/// an error estimate. gamma = 0 and |rho| > kLargeRhoCutoff use the limit forms.
Coefficient s_nm(const ScatterParams& params, int n, int m);

/// All s_nm with n + m <= n_max; c_k is computed once per k.
CoeffTable coeff_table(const ScatterParams& params, int n_max);

/// Continuous-radiation transmission/reflection amplitudes.
struct ContinuumAmplitudes {
  Complex t;
  Complex r;
  double T;
  double R;
};

/// t = delta/(delta + i gamma), r = -i gamma/(delta + i gamma).
/// Throws std::invalid_argument when gamma = delta = 0.
ContinuumAmplitudes continuum_amplitudes(const ScatterParams& params);

/// Large-n overlay cos(sqrt(gamma n / 2)) for the forward coefficient at
/// resonance. Requires n >= 1 and delta == 0.
double s_n_forward_asymptotic(const ScatterParams& params, int n);

}  // namespace fcs
