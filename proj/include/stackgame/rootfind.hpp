#pragma once

#include <functional>
#include <vector>

namespace stackgame {

/// Bisection on a bracket where f(lo) and f(hi) have opposite (or zero) sign.
/// Runs until the bracket collapses to adjacent doubles, so the returned root
/// is accurate to the last representable digit of its magnitude.
[[nodiscard]] double bisect(const std::function<double(double)>& f, double lo, double hi,
                            double f_lo, double f_hi);

/// All roots of f on [lo, hi] found by scanning `subintervals` equal pieces
/// for sign changes and bisecting each bracket. Grid points where f is
/// exactly zero are returned as roots themselves. Ascending order.
[[nodiscard]] std::vector<double> scan_roots(const std::function<double(double)>& f, double lo,
                                             double hi, int subintervals);

/// Argmax of f on [lo, hi] by golden-section search, narrowing the interval
/// to width <= tol. Requires f unimodal on the interval for a global answer.
[[nodiscard]] double golden_section_max(const std::function<double(double)>& f, double lo,
                                        double hi, double tol);

}  // namespace stackgame
