#include "stackgame/jet.hpp"

#include <cmath>
#include <cstdlib>
#include <string>

#include "stackgame/errors.hpp"

namespace stackgame {

namespace {

constexpr double kDivisionFloor = 1e-300;

void require_compatible(const Jet& a, const Jet& b) {
  if (a.center() != b.center()) {
    throw Error(ErrorKind::CenterMismatch,
                "jet centers differ: " + std::to_string(a.center()) + " vs " +
                    std::to_string(b.center()));
  }
  if (a.order() != b.order()) {
    throw Error(ErrorKind::OrderMismatch,
                "jet orders differ: " + std::to_string(a.order()) + " vs " +
                    std::to_string(b.order()));
  }
}

}  // namespace

Jet Jet::constant(double v, int order, double center) {
  if (order < 0) throw Error(ErrorKind::BadInput, "jet order must be >= 0");
  std::vector<double> c(static_cast<std::size_t>(order) + 1, 0.0);
  c[0] = v;
  return Jet(center, std::move(c));
}

Jet Jet::identity(double x0, int order) {
  if (order < 0) throw Error(ErrorKind::BadInput, "jet order must be >= 0");
  std::vector<double> c(static_cast<std::size_t>(order) + 1, 0.0);
  c[0] = x0;
  if (order >= 1) c[1] = 1.0;
  return Jet(x0, std::move(c));
}

Jet Jet::from_coefficients(double center, std::vector<double> coeffs) {
  if (coeffs.empty()) throw Error(ErrorKind::BadInput, "jet needs at least one coefficient");
  return Jet(center, std::move(coeffs));
}

double Jet::derivative_value(int j) const {
  if (j < 0 || j > order()) {
    throw Error(ErrorKind::BadInput, "derivative index outside carried order");
  }
  double factorial = 1.0;
  for (int i = 2; i <= j; ++i) factorial *= i;
  return factorial * coeffs_[static_cast<std::size_t>(j)];
}

Jet operator+(const Jet& a, const Jet& b) {
  require_compatible(a, b);
  std::vector<double> c(a.coeffs_);
  for (std::size_t j = 0; j < c.size(); ++j) c[j] += b.coeffs_[j];
  return Jet(a.center_, std::move(c));
}

Jet operator-(const Jet& a, const Jet& b) {
  require_compatible(a, b);
  std::vector<double> c(a.coeffs_);
  for (std::size_t j = 0; j < c.size(); ++j) c[j] -= b.coeffs_[j];
  return Jet(a.center_, std::move(c));
}

Jet operator*(const Jet& a, const Jet& b) {
  require_compatible(a, b);
  const std::size_t m = a.coeffs_.size();
  std::vector<double> c(m, 0.0);
  for (std::size_t j = 0; j < m; ++j) {
    double acc = 0.0;
    for (std::size_t i = 0; i <= j; ++i) acc += a.coeffs_[i] * b.coeffs_[j - i];
    c[j] = acc;
  }
  return Jet(a.center_, std::move(c));
}

Jet operator/(const Jet& a, const Jet& b) {
  require_compatible(a, b);
  if (std::abs(b.coeffs_[0]) < kDivisionFloor) {
    throw Error(ErrorKind::DivisionByZeroJet, "leading divisor coefficient ~ 0");
  }
  const std::size_t m = a.coeffs_.size();
  std::vector<double> c(m, 0.0);
  // c solves a = b*c: c_j = (a_j - sum_{i=1..j} b_i c_{j-i}) / b_0.
  for (std::size_t j = 0; j < m; ++j) {
    double acc = a.coeffs_[j];
    for (std::size_t i = 1; i <= j; ++i) acc -= b.coeffs_[i] * c[j - i];
    c[j] = acc / b.coeffs_[0];
  }
  return Jet(a.center_, std::move(c));
}

Jet operator-(const Jet& a) {
  std::vector<double> c(a.coeffs_);
  for (double& v : c) v = -v;
  return Jet(a.center_, std::move(c));
}

Jet operator+(const Jet& a, double s) {
  std::vector<double> c(a.coeffs_);
  c[0] += s;
  return Jet(a.center_, std::move(c));
}

Jet operator-(const Jet& a, double s) { return a + (-s); }

Jet operator*(double s, const Jet& a) {
  std::vector<double> c(a.coeffs_);
  for (double& v : c) v *= s;
  return Jet(a.center_, std::move(c));
}

Jet sin(const Jet& a) {
  const std::size_t m = a.coeffs_.size();
  std::vector<double> s(m, 0.0);
  std::vector<double> c(m, 0.0);
  s[0] = std::sin(a.coeffs_[0]);
  c[0] = std::cos(a.coeffs_[0]);
  // Coupled recurrence for s = sin(a), c = cos(a):
  //   j*s_j = sum_{i=1..j} i*a_i*c_{j-i},  j*c_j = -sum_{i=1..j} i*a_i*s_{j-i}.
  for (std::size_t j = 1; j < m; ++j) {
    double acc_s = 0.0;
    double acc_c = 0.0;
    for (std::size_t i = 1; i <= j; ++i) {
      acc_s += static_cast<double>(i) * a.coeffs_[i] * c[j - i];
      acc_c += static_cast<double>(i) * a.coeffs_[i] * s[j - i];
    }
    s[j] = acc_s / static_cast<double>(j);
    c[j] = -acc_c / static_cast<double>(j);
  }
  return Jet(a.center_, std::move(s));
}

Jet derivative(const Jet& a) {
  if (a.order() < 1) {
    throw Error(ErrorKind::ZeroOrder, "cannot differentiate an order-0 jet");
  }
  std::vector<double> c(a.coeffs_.size() - 1);
  for (std::size_t j = 0; j < c.size(); ++j) {
    c[j] = static_cast<double>(j + 1) * a.coeffs_[j + 1];
  }
  return Jet(a.center_, std::move(c));
}

Jet truncated(const Jet& a, int order) {
  if (order < 0 || order > a.order()) {
    throw Error(ErrorKind::BadInput, "truncation order outside [0, order]");
  }
  std::vector<double> c(a.coeffs_.begin(), a.coeffs_.begin() + order + 1);
  return Jet(a.center_, std::move(c));
}

}  // namespace stackgame
