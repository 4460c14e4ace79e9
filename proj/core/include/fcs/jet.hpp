#pragma once

#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <vector>

#include "fcs/special_functions.hpp"

namespace fcs {

/// Signalled when sqrt or reciprocal is applied to a jet with zero constant term.
class BranchError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// Truncated Taylor series sum_k a_k w^k, k = 0..order.
///
/// All arithmetic is exact to the truncation order: the coefficient at w^k of
/// any result depends only on input coefficients up to w^k. Binary operations
/// require equal orders.
class Jet {
public:
  Jet() = default;
  explicit Jet(std::vector<Complex> coeffs);
  Jet(std::initializer_list<Complex> coeffs);

  static Jet constant(Complex value, int order);
  /// w -> value + w, the seed for differentiation at `value`.
  static Jet variable(Complex value, int order);

  int order() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<Complex>& coeffs() const { return coeffs_; }
  Complex operator[](std::size_t k) const { return coeffs_[k]; }
  Complex& operator[](std::size_t k) { return coeffs_[k]; }
  Complex value() const { return coeffs_.front(); }

  /// k-th derivative at the expansion point, k! a_k.
  Complex derivative(int k) const;

  Jet& operator+=(const Jet& other);
  Jet& operator-=(const Jet& other);
  Jet& operator*=(const Jet& other);
  Jet& operator/=(const Jet& other);
  Jet& operator+=(Complex s);
  Jet& operator-=(Complex s);
  Jet& operator*=(Complex s);
  Jet& operator/=(Complex s);

  Jet operator-() const;

private:
  void check_order(const Jet& other) const;
  std::vector<Complex> coeffs_{Complex{0.0, 0.0}};
};

Jet operator+(Jet a, const Jet& b);
Jet operator-(Jet a, const Jet& b);
Jet operator*(const Jet& a, const Jet& b);
Jet operator/(const Jet& a, const Jet& b);
Jet operator+(Jet a, Complex s);
Jet operator+(Complex s, Jet a);
Jet operator-(Jet a, Complex s);
Jet operator-(Complex s, const Jet& a);
Jet operator*(Jet a, Complex s);
Jet operator*(Complex s, Jet a);
Jet operator/(Jet a, Complex s);
Jet operator/(Complex s, const Jet& a);

Jet exp(const Jet& x);
Jet sin(const Jet& x);
Jet cos(const Jet& x);
Jet sqrt(const Jet& x);
Jet reciprocal(const Jet& x);
/// sin(x) and cos(x) in one pass.
void sincos(const Jet& x, Jet& s, Jet& c);

enum class Elementary { Exp, Sin, Cos, Sqrt, Reciprocal };

/// Dispatch form of the elementary jet functions.
Jet jet_elementary(Elementary f, const Jet& x);

}  // namespace fcs
