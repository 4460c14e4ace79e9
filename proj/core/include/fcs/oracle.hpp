#pragma once

#include "fcs/jet.hpp"
#include "fcs/scattering.hpp"

namespace fcs {

// Independent evaluation routes for the vacuum kernel
//   d(w) = e^{i rho} [cos(kL/2) - i (delta + i gamma) sin(kL/2)/kL],
//   kL = sqrt((delta + i gamma)^2 + 8 gamma w),
// and the coefficients s_nm = 2^{-(n+m)} (D + 2)^n D^m d(w) at w = 0.

enum class KernelRoute { TrigClosedForm, RootRepresentation, SeriesExpansion };

const char* to_string(KernelRoute route);

struct KernelValue {
  Complex value;
  KernelRoute route;
};

/// |kL| below which cos and sin(x)/x switch to their Taylor series.
inline constexpr double kKernelSeriesThreshold = 1e-4;
/// |p+ - p-| below which the root form uses the confluent limit.
inline constexpr double kConfluentThreshold = 1e-6;

/// Trigonometric closed form.
KernelValue kernel_d_tilde(const ScatterParams& params, Complex w);
/// Same closed form on a jet argument; coefficient k is the w^k Taylor term.
Jet kernel_d_tilde(const ScatterParams& params, const Jet& w);

/// sum_k t^k c_k(rho)/k!, t = -gamma w / rho. Requires rho != 0.
KernelValue kernel_series(const ScatterParams& params, Complex w, int terms = 60);

/// Two-root form -p-/(p+ - p-) e^{-i p+} + p+/(p+ - p-) e^{-i p-}, with p
/// the roots of p^2 + (delta + i gamma) p - 2 gamma w = 0.
///
/// That quadratic is the pulse-length-scaled root equation with
/// 2 pi g^2 alpha v*/L -> 2 gamma w: the amplitude alpha/sqrt(2) and the
/// source v = (v_r + v_l)/sqrt(2) combine into w = alpha (v_r* + v_l*)/2.
KernelValue kernel_root_form(const ScatterParams& params, Complex w);

/// s_nm from derivatives of the kernel jet. The jet has order n + m + padding.
/// Throws BranchError when gamma = delta = 0.
Complex s_nm_oracle(const ScatterParams& params, int n, int m, int padding = 0);

/// Full table from a single order-n_max jet, tagged CoeffRoute::JetOracle.
CoeffTable oracle_table(const ScatterParams& params, int n_max);

}  // namespace fcs
