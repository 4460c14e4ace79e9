#pragma once

// Template definitions for counting.hpp.

namespace fcs {
namespace detail {

template <typename K>
std::array<long double, 4> central_differences(const K& cgf, long double s) {
  const long double k0 = cgf(0.0L);
  const long double kp1 = cgf(s), km1 = cgf(-s);
  const long double kp2 = cgf(2 * s), km2 = cgf(-2 * s);
  const long double s2 = s * s;
  return {
      (kp1 - km1) / (2 * s),
      (kp1 - 2 * k0 + km1) / s2,
      (kp2 - 2 * kp1 + 2 * km1 - km2) / (2 * s2 * s),
      (kp2 - 4 * kp1 + 6 * k0 - 4 * km1 + km2) / (s2 * s2),
  };
}

}  // namespace detail

template <typename K>
std::array<double, 4> cumulants_by_finite_difference(const K& cgf, long double h) {
  const auto fine = detail::central_differences(cgf, h);
  const auto coarse = detail::central_differences(cgf, 2 * h);
  std::array<double, 4> out{};
  for (std::size_t k = 0; k < 4; ++k) {
    out[k] = static_cast<double>((4 * fine[k] - coarse[k]) / 3);
  }
  return out;
}

}  // namespace fcs
