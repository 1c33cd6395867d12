#include "cellaoi/numerics/optimize.hpp"

#include <cmath>

#include "cellaoi/error.hpp"

namespace cellaoi::numerics {

Maximum1D golden_section_maximize(const std::function<double(double)>& f, double lo, double hi, double tol) {
  if (!(hi > lo) || !(tol > 0.0)) throw Error(ErrorCode::DomainError, "golden_section_maximize: bad bracket");
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - invphi * (b - a);
  double d = a + invphi * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > tol) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - invphi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invphi * (b - a);
      fd = f(d);
    }
  }
  Maximum1D best = fc >= fd ? Maximum1D{c, fc} : Maximum1D{d, fd};
  for (double edge : {lo, hi}) {
    const double fe = f(edge);
    if (fe > best.value) best = {edge, fe};
  }
  return best;
}

}  // namespace cellaoi::numerics
