#pragma once

#include <stdexcept>
#include <variant>
#include <vector>

#include "fcs/counting.hpp"

namespace fcs {

/// A custom amplitude vector that is not normalized.
class NormalizationError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

struct CoherentState {
  double nbar;
};

struct FockState {
  int n;
};

struct SqueezedState {
  double magnitude;
  double theta;
};

/// Arbitrary amplitudes psi_n in the counted mode.
class CustomState {
public:
  /// Throws NormalizationError unless sum |psi_n|^2 = 1 within kTolerance.
  explicit CustomState(std::vector<Complex> amplitudes);

  static constexpr double kTolerance = 1e-10;

  const std::vector<Complex>& amplitudes() const { return amps_; }
  std::vector<double> number_distribution() const;

private:
  std::vector<Complex> amps_;
};

using InitialState = std::variant<CoherentState, FockState, SqueezedState, CustomState>;

/// Validates field ranges (nbar >= 0, N >= 0, |zeta| >= 0, finite values).
void validate(const InitialState& state);

/// Squeezed-vacuum amplitudes psi_{2n}, truncated once the remaining mass
/// drops below 1e-15. Odd entries are exactly zero.
std::vector<Complex> squeezed_amplitudes(double magnitude, double theta);

CustomState make_custom(const InitialState& state, int min_length = 0);

/// Continuum-limit F_psi(lambda_r, lambda_l) with transmission T, R = 1 - T.
/// Throws std::invalid_argument for T outside [0, 1].
Complex continuum_F(const InitialState& state, double T, double lambda_r, double lambda_l);

/// Forward (transmission T) or backward (T and R exchanged) distribution.
/// Coherent and Fock use their closed forms; other states are recovered by
/// inverse DFT of continuum_F.
CountDistribution continuum_distribution(const InitialState& state, double T, Channel channel,
                                         int n_max);

struct SqueezedComparison {
  CountDistribution closed_form;  // (1 - d) delta_{n0} + d p_{zeta'}(n)
  CountDistribution general;      // inverse-DFT route, the reference
  std::vector<double> discrepancy;  // closed_form - general, per n
  double max_discrepancy = 0.0;
  double zeta_prime = 0.0;          // arctanh(T^2 tanh|zeta|)
  double d_zeta = 0.0;              // cosh|zeta'| / cosh|zeta|
};

/// Forward distribution of a squeezed vacuum through both routes.
SqueezedComparison squeezed_distribution(double magnitude, double theta, double T, int n_max);

}  // namespace fcs
