#include "fcs/jet.hpp"

#include <cmath>
#include <utility>

namespace fcs {

Jet::Jet(std::vector<Complex> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) throw std::invalid_argument("Jet: needs at least one coefficient");
}

Jet::Jet(std::initializer_list<Complex> coeffs) : Jet(std::vector<Complex>(coeffs)) {}

Jet Jet::constant(Complex value, int order) {
  if (order < 0) throw std::invalid_argument("Jet: order must be >= 0");
  std::vector<Complex> c(static_cast<std::size_t>(order) + 1, Complex{0.0, 0.0});
  c[0] = value;
  return Jet(std::move(c));
}

Jet Jet::variable(Complex value, int order) {
  Jet j = constant(value, order);
  if (order >= 1) j.coeffs_[1] = 1.0;
  return j;
}

Complex Jet::derivative(int k) const {
  if (k < 0 || k > order()) throw std::out_of_range("Jet::derivative: order out of range");
  double factorial = 1.0;
  for (int i = 2; i <= k; ++i) factorial *= i;
  return factorial * coeffs_[static_cast<std::size_t>(k)];
}

void Jet::check_order(const Jet& other) const {
  if (other.order() != order()) throw std::invalid_argument("Jet: order mismatch");
}

Jet& Jet::operator+=(const Jet& other) {
  check_order(other);
  for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] += other.coeffs_[k];
  return *this;
}

Jet& Jet::operator-=(const Jet& other) {
  check_order(other);
  for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] -= other.coeffs_[k];
  return *this;
}

Jet& Jet::operator*=(const Jet& other) {
  check_order(other);
  const std::size_t n = coeffs_.size();
  std::vector<Complex> out(n, Complex{0.0, 0.0});
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t j = 0; j <= k; ++j) out[k] += coeffs_[j] * other.coeffs_[k - j];
  }
  coeffs_ = std::move(out);
  return *this;
}

Jet& Jet::operator/=(const Jet& other) {
  check_order(other);
  const Complex v0 = other.coeffs_[0];
  if (v0 == Complex{0.0, 0.0}) throw BranchError("Jet: division by a jet with zero constant term");
  const std::size_t n = coeffs_.size();
  std::vector<Complex> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    Complex acc = coeffs_[k];
    for (std::size_t j = 1; j <= k; ++j) acc -= other.coeffs_[j] * out[k - j];
    out[k] = acc / v0;
  }
  coeffs_ = std::move(out);
  return *this;
}

Jet& Jet::operator+=(Complex s) {
  coeffs_[0] += s;
  return *this;
}

Jet& Jet::operator-=(Complex s) {
  coeffs_[0] -= s;
  return *this;
}

Jet& Jet::operator*=(Complex s) {
  for (auto& c : coeffs_) c *= s;
  return *this;
}

Jet& Jet::operator/=(Complex s) {
  for (auto& c : coeffs_) c /= s;
  return *this;
}

Jet Jet::operator-() const {
  Jet out = *this;
  for (auto& c : out.coeffs_) c = -c;
  return out;
}

Jet operator+(Jet a, const Jet& b) { return a += b; }
Jet operator-(Jet a, const Jet& b) { return a -= b; }
Jet operator*(const Jet& a, const Jet& b) {
  Jet out = a;
  return out *= b;
}
Jet operator/(const Jet& a, const Jet& b) {
  Jet out = a;
  return out /= b;
}
Jet operator+(Jet a, Complex s) { return a += s; }
Jet operator+(Complex s, Jet a) { return a += s; }
Jet operator-(Jet a, Complex s) { return a -= s; }
Jet operator-(Complex s, const Jet& a) { return -a + s; }
Jet operator*(Jet a, Complex s) { return a *= s; }
Jet operator*(Complex s, Jet a) { return a *= s; }
Jet operator/(Jet a, Complex s) { return a /= s; }
Jet operator/(Complex s, const Jet& a) { return reciprocal(a) * s; }

Jet exp(const Jet& x) {
  const auto& a = x.coeffs();
  std::vector<Complex> e(a.size());
  e[0] = std::exp(a[0]);
  for (std::size_t k = 1; k < a.size(); ++k) {
    Complex acc{0.0, 0.0};
    for (std::size_t j = 1; j <= k; ++j) acc += static_cast<double>(j) * a[j] * e[k - j];
    e[k] = acc / static_cast<double>(k);
  }
  return Jet(std::move(e));
}

void sincos(const Jet& x, Jet& s_out, Jet& c_out) {
  const auto& a = x.coeffs();
  std::vector<Complex> s(a.size()), c(a.size());
  s[0] = std::sin(a[0]);
  c[0] = std::cos(a[0]);
  for (std::size_t k = 1; k < a.size(); ++k) {
    Complex as{0.0, 0.0}, ac{0.0, 0.0};
    for (std::size_t j = 1; j <= k; ++j) {
      const Complex ja = static_cast<double>(j) * a[j];
      as += ja * c[k - j];
      ac += ja * s[k - j];
    }
    s[k] = as / static_cast<double>(k);
    c[k] = -ac / static_cast<double>(k);
  }
  s_out = Jet(std::move(s));
  c_out = Jet(std::move(c));
}

Jet sin(const Jet& x) {
  Jet s, c;
  sincos(x, s, c);
  return s;
}

Jet cos(const Jet& x) {
  Jet s, c;
  sincos(x, s, c);
  return c;
}

Jet sqrt(const Jet& x) {
  const auto& a = x.coeffs();
  if (a[0] == Complex{0.0, 0.0}) throw BranchError("Jet sqrt: constant term vanishes");
  std::vector<Complex> y(a.size());
  y[0] = std::sqrt(a[0]);
  const Complex two_y0 = 2.0 * y[0];
  for (std::size_t k = 1; k < a.size(); ++k) {
    Complex acc = a[k];
    for (std::size_t j = 1; j < k; ++j) acc -= y[j] * y[k - j];
    y[k] = acc / two_y0;
  }
  return Jet(std::move(y));
}

Jet reciprocal(const Jet& x) {
  const auto& a = x.coeffs();
  if (a[0] == Complex{0.0, 0.0}) throw BranchError("Jet reciprocal: constant term vanishes");
  std::vector<Complex> y(a.size());
  y[0] = 1.0 / a[0];
  for (std::size_t k = 1; k < a.size(); ++k) {
    Complex acc{0.0, 0.0};
    for (std::size_t j = 1; j <= k; ++j) acc += a[j] * y[k - j];
    y[k] = -acc * y[0];
  }
  return Jet(std::move(y));
}

Jet jet_elementary(Elementary f, const Jet& x) {
  switch (f) {
    case Elementary::Exp: return exp(x);
    case Elementary::Sin: return sin(x);
    case Elementary::Cos: return cos(x);
    case Elementary::Sqrt: return sqrt(x);
    case Elementary::Reciprocal: return reciprocal(x);
  }
  throw std::invalid_argument("jet_elementary: unknown function");
}

}  // namespace fcs
