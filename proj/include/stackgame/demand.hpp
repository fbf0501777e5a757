#pragma once

#include "stackgame/jet.hpp"

namespace stackgame {

enum class DemandFamily { Linear, SinePerturbed };

/// Competitive benchmark: the total quantity where price meets marginal cost.
struct CompetitiveBenchmark {
  double xbar_c = 0.0;   // P(xbar_c) = c
  double residual = 0.0; // |P(xbar_c) - c|
};

/// Inverse demand with constant marginal cost.
///   Linear:        P(X) = a*(xbar - X)
///   SinePerturbed: P(X) = a*(xbar - X) - eps*sin(k*pi*X)
/// Construction enforces a > 0, xbar > 0, c >= 0, c < P(0), and for the
/// perturbed family the strict-monotonicity guard a - |eps|*k*pi > 0.
class DemandModel {
 public:
  static DemandModel linear(double a, double xbar, double c);
  static DemandModel sine_perturbed(double a, double xbar, double eps, int k, double c);

  [[nodiscard]] DemandFamily family() const noexcept { return family_; }
  [[nodiscard]] double a() const noexcept { return a_; }
  [[nodiscard]] double xbar() const noexcept { return xbar_; }
  [[nodiscard]] double eps() const noexcept { return eps_; }
  [[nodiscard]] int k() const noexcept { return k_; }
  [[nodiscard]] double c() const noexcept { return c_; }

  [[nodiscard]] double price(double X) const;
  /// First derivative P'(X), evaluated directly from the formula.
  [[nodiscard]] double price_slope(double X) const;
  /// Taylor jet of P about X; exact coefficients for both families. order <= 12.
  [[nodiscard]] Jet price_jet(double X, int order) const;

  /// g(X) = -(P(X) - c)/P'(X), the markup-to-slope ratio. Value only.
  [[nodiscard]] double g(double X) const;
  /// Jet of g about X via jet arithmetic. Requires P'(X) != 0.
  [[nodiscard]] Jet g_jet(double X, int order) const;

  /// Linear: closed form xbar - c/a. SinePerturbed: bracketed bisection on
  /// [0, xbar + c/a] to |P(X) - c| <= 1e-12.
  [[nodiscard]] CompetitiveBenchmark competitive_quantity() const;

 private:
  DemandModel(DemandFamily family, double a, double xbar, double eps, int k, double c);

  DemandFamily family_;
  double a_;
  double xbar_;
  double eps_;
  int k_;
  double c_;
};

}  // namespace stackgame
