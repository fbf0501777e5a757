#pragma once

#include <vector>

namespace stackgame {

/// Truncated Taylor expansion of a scalar function about a fixed center:
/// coeffs[j] = f^(j)(center)/j! for j = 0..order. Arithmetic on jets
/// propagates exact derivatives through algebraic composition, which is how
/// the solver obtains the higher-order demand derivatives its recursions need.
class Jet {
 public:
  /// Jet of the constant function v, expanded about `center`.
  static Jet constant(double v, int order, double center = 0.0);
  /// Jet of f(X) = X about x0; coefficients (x0, 1, 0, ..., 0).
  static Jet identity(double x0, int order);
  /// Jet with explicitly given coefficients (size fixes the order).
  static Jet from_coefficients(double center, std::vector<double> coeffs);

  [[nodiscard]] int order() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  [[nodiscard]] double center() const noexcept { return center_; }
  [[nodiscard]] double coeff(int j) const { return coeffs_[static_cast<std::size_t>(j)]; }
  [[nodiscard]] const std::vector<double>& coeffs() const noexcept { return coeffs_; }

  /// Function value f(center).
  [[nodiscard]] double value() const { return coeffs_[0]; }
  /// j-th derivative value f^(j)(center) = j! * coeffs[j]; j <= order.
  [[nodiscard]] double derivative_value(int j) const;

  friend Jet operator+(const Jet& a, const Jet& b);
  friend Jet operator-(const Jet& a, const Jet& b);
  friend Jet operator*(const Jet& a, const Jet& b);
  /// Recursive division; requires |b.coeff(0)| > 1e-300.
  friend Jet operator/(const Jet& a, const Jet& b);
  friend Jet operator-(const Jet& a);
  friend Jet operator+(const Jet& a, double s);
  friend Jet operator-(const Jet& a, double s);
  friend Jet operator*(double s, const Jet& a);

  /// Coefficients of sin(f) from the coupled sin/cos recurrence; exact for
  /// the orders carried.
  friend Jet sin(const Jet& a);
  /// Jet of f'; coefficient shift, order drops by one. Requires order >= 1.
  friend Jet derivative(const Jet& a);
  /// Copy truncated to a lower (or equal) order.
  friend Jet truncated(const Jet& a, int order);

 private:
  Jet(double center, std::vector<double> coeffs)
      : center_(center), coeffs_(std::move(coeffs)) {}

  double center_ = 0.0;
  std::vector<double> coeffs_;
};

}  // namespace stackgame
