#include "stackgame/demand.hpp"

#include <cmath>
#include <numbers>

#include "stackgame/errors.hpp"
#include "stackgame/rootfind.hpp"

namespace stackgame {

namespace {
constexpr int kMaxJetOrder = 12;
}

DemandModel::DemandModel(DemandFamily family, double a, double xbar, double eps, int k, double c)
    : family_(family), a_(a), xbar_(xbar), eps_(eps), k_(k), c_(c) {
  if (!(a > 0.0)) throw Error(ErrorKind::BadInput, "demand slope scale a must be > 0");
  if (!(xbar > 0.0)) throw Error(ErrorKind::BadInput, "saturation quantity xbar must be > 0");
  if (!(c >= 0.0)) throw Error(ErrorKind::BadInput, "marginal cost c must be >= 0");
  if (family == DemandFamily::SinePerturbed) {
    if (k < 1) throw Error(ErrorKind::BadInput, "perturbation frequency k must be >= 1");
    if (!(a - std::abs(eps) * k * std::numbers::pi > 0.0)) {
      throw Error(ErrorKind::MonotonicityViolated,
                  "strict monotonicity guard a - |eps|*k*pi > 0 fails");
    }
  }
  if (!(c < price(0.0))) {
    throw Error(ErrorKind::BadInput, "marginal cost must sit below the choke price P(0)");
  }
}

DemandModel DemandModel::linear(double a, double xbar, double c) {
  return DemandModel(DemandFamily::Linear, a, xbar, 0.0, 1, c);
}

DemandModel DemandModel::sine_perturbed(double a, double xbar, double eps, int k, double c) {
  return DemandModel(DemandFamily::SinePerturbed, a, xbar, eps, k, c);
}

double DemandModel::price(double X) const {
  const double affine = a_ * (xbar_ - X);
  if (family_ == DemandFamily::Linear) return affine;
  return affine - eps_ * std::sin(k_ * std::numbers::pi * X);
}

double DemandModel::price_slope(double X) const {
  if (family_ == DemandFamily::Linear) return -a_;
  const double w = k_ * std::numbers::pi;
  return -a_ - eps_ * w * std::cos(w * X);
}

Jet DemandModel::price_jet(double X, int order) const {
  if (order < 0 || order > kMaxJetOrder) {
    throw Error(ErrorKind::BadInput, "price jet order must be in [0, 12]");
  }
  Jet affine = a_ * (Jet::constant(xbar_, order, X) - Jet::identity(X, order));
  if (family_ == DemandFamily::Linear) return affine;
  const double w = k_ * std::numbers::pi;
  Jet phase = w * Jet::identity(X, order);
  return affine - eps_ * sin(phase);
}

double DemandModel::g(double X) const {
  const double slope = price_slope(X);
  if (std::abs(slope) < 1e-300) {
    throw Error(ErrorKind::DivisionByZeroJet, "P'(X) vanishes; g undefined");
  }
  return -(price(X) - c_) / slope;
}

Jet DemandModel::g_jet(double X, int order) const {
  Jet p = price_jet(X, order + 1);
  Jet slope = derivative(p);                      // order entries: P', P'', ...
  Jet net = truncated(p, order) - c_;             // P - c at matching order
  return -(net / slope);
}

CompetitiveBenchmark DemandModel::competitive_quantity() const {
  if (family_ == DemandFamily::Linear) {
    const double root = xbar_ - c_ / a_;
    return CompetitiveBenchmark{root, std::abs(price(root) - c_)};
  }
  const auto excess = [this](double X) { return price(X) - c_; };
  const double f_lo = excess(0.0);
  double hi = xbar_ + c_ / a_;
  double f_hi = excess(hi);
  if (f_hi > 0.0) {
    // The sine term can hold the price above c at xbar + c/a (only when its
    // phase there is negative); one amplitude further the affine part wins.
    hi = xbar_ + (c_ + std::abs(eps_)) / a_ + 1e-9 * xbar_;
    f_hi = excess(hi);
    if (f_hi > 0.0) {
      throw Error(ErrorKind::MonotonicityViolated, "no price-cost crossing found");
    }
  }
  const double root = bisect(excess, 0.0, hi, f_lo, f_hi);
  return CompetitiveBenchmark{root, std::abs(price(root) - c_)};
}

}  // namespace stackgame
