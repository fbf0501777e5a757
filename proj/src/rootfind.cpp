#include "stackgame/rootfind.hpp"

#include <cmath>

#include "stackgame/errors.hpp"

namespace stackgame {

double bisect(const std::function<double(double)>& f, double lo, double hi, double f_lo,
              double f_hi) {
  if (lo > hi) throw Error(ErrorKind::BadInput, "bisect: empty bracket");
  if (f_lo == 0.0) return lo;
  if (f_hi == 0.0) return hi;
  if (std::signbit(f_lo) == std::signbit(f_hi)) {
    throw Error(ErrorKind::BadInput, "bisect: bracket does not straddle a sign change");
  }
  while (true) {
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) return mid;  // bracket collapsed to adjacent doubles
    const double f_mid = f(mid);
    if (f_mid == 0.0) return mid;
    if (std::signbit(f_mid) == std::signbit(f_lo)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
      f_hi = f_mid;
    }
  }
}

std::vector<double> scan_roots(const std::function<double(double)>& f, double lo, double hi,
                               int subintervals) {
  if (subintervals < 1) throw Error(ErrorKind::BadInput, "scan_roots: need >= 1 subinterval");
  if (!(lo < hi)) throw Error(ErrorKind::BadInput, "scan_roots: need lo < hi");

  std::vector<double> roots;
  const double width = hi - lo;
  double x_prev = lo;
  double f_prev = f(lo);
  if (f_prev == 0.0) roots.push_back(lo);
  for (int i = 1; i <= subintervals; ++i) {
    const double x = (i == subintervals) ? hi : lo + width * i / subintervals;
    const double f_x = f(x);
    if (f_x == 0.0) {
      roots.push_back(x);
    } else if (f_prev != 0.0 && std::signbit(f_x) != std::signbit(f_prev)) {
      roots.push_back(bisect(f, x_prev, x, f_prev, f_x));
    }
    x_prev = x;
    f_prev = f_x;
  }
  return roots;
}

double golden_section_max(const std::function<double(double)>& f, double lo, double hi,
                          double tol) {
  if (!(lo <= hi)) throw Error(ErrorKind::BadInput, "golden_section_max: need lo <= hi");
  // inverse golden ratio, (sqrt(5)-1)/2
  constexpr double kInvPhi = 0.6180339887498949;
  double a = lo;
  double b = hi;
  double x1 = b - kInvPhi * (b - a);
  double x2 = a + kInvPhi * (b - a);
  double f1 = f(x1);
  double f2 = f(x2);
  while (b - a > tol) {
    if (f1 >= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kInvPhi * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kInvPhi * (b - a);
      f2 = f(x2);
    }
    if (x1 >= x2) break;  // interval exhausted in floating point
  }
  return a + 0.5 * (b - a);
}

}  // namespace stackgame
