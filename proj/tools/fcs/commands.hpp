#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fcs/continuum.hpp"
#include "fcs/oracle.hpp"
#include "table.hpp"

namespace fcs::cli {

Table cmd_dist(const ScatterParams& params, double nbar, Channel channel, Truncation n_max);
Table cmd_joint(const ScatterParams& params, double nbar, Truncation n_max);
Table cmd_coeffs(const ScatterParams& params, int n_max, CoeffRoute route);
Table cmd_continuum(const InitialState& state, const std::string& state_spec, double T,
                    Channel channel, std::optional<int> n_max);
Table cmd_gf(const ScatterParams& params, double nbar, double lambda_r, double lambda_l,
             Truncation n_max);
Table cmd_gf_real(const ScatterParams& params, double nbar, double z_r, double z_l,
                  Truncation n_max);
Table cmd_gf_continuum(const InitialState& state, const std::string& state_spec, double T,
                       double lambda_r, double lambda_l);
Table cmd_kernel(const ScatterParams& params, Complex w);
Table cmd_special(int n, Complex rho);
Table cmd_asymptotic(const ScatterParams& params, int n_lo, int n_hi);

struct SweepGrid {
  std::vector<double> gamma;
  std::vector<double> delta;
  std::vector<double> nbar;
};

enum class SweepWhat { Dist, Moments };

/// Rows are ordered by (gamma, delta, nbar) grid index whatever `jobs` is.
Table cmd_sweep(const SweepGrid& grid, SweepWhat what, Channel channel, Truncation n_max, int jobs);

/// First n* > nbar (n* >= 1) with p(n*-1) < p(n*) >= p(n*+1) and p(n*) > 1e-12, or -1.
int reentrant_peak(const std::vector<double>& probs, double nbar);

}  // namespace fcs::cli
