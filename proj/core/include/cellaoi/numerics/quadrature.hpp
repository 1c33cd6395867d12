#pragma once

#include <functional>
#include <limits>

#include "cellaoi/error.hpp"

namespace cellaoi::numerics {

enum class SemiInfiniteMap {
  Rational,     ///< x = a + t/(1-t)
  Exponential,  ///< x = a - log(1-t)
};

struct QuadratureSpec {
  double rel_tol = 1e-8;
  double abs_tol = 0.0;
  int max_subdivisions = 500;
  SemiInfiniteMap semi_infinite_map = SemiInfiniteMap::Rational;

  /// Throws DomainError when rel_tol <= 0, abs_tol < 0 or max_subdivisions < 10.
  void check() const;
  QuadratureSpec with_rel_tol(double tol) const {
    auto s = *this;
    s.rel_tol = tol;
    return s;
  }
};

struct QuadResult {
  double value = 0.0;
  double abs_error = 0.0;
  int evaluations = 0;
  int subdivisions = 0;
  bool converged = true;
};

/// Raised when the requested accuracy could not be reached. Carries the best
/// estimate and its error bound.
class QuadratureError : public Error {
 public:
  QuadratureError(const std::string& what, QuadResult best);
  const QuadResult& best() const noexcept { return best_; }

 private:
  QuadResult best_;
};

using Integrand = std::function<double(double)>;
using Integrand2D = std::function<double(double, double)>;

/// Globally adaptive Gauss-Kronrod (7/15) integration of f over [a, b].
/// b may be +infinity, in which case the interval is mapped onto [0, 1).
/// Never throws on accuracy failure; inspect QuadResult::converged.
QuadResult try_integrate_1d(const Integrand& f, double a, double b, const QuadratureSpec& spec = {});

/// Same as try_integrate_1d but throws QuadratureError (TOLERANCE_NOT_MET)
/// when the error estimate exceeds max(abs_tol, rel_tol*|result|).
QuadResult integrate_1d(const Integrand& f, double a, double b, const QuadratureSpec& spec = {});

/// Region {u_lo <= u <= u_hi, v_lo(u) <= v <= v_hi(u)}; covers the triangular
/// domains {0 <= v <= g(u)}.
struct Region2D {
  double u_lo = 0.0;
  double u_hi = 0.0;
  std::function<double(double)> v_lo = [](double) { return 0.0; };
  std::function<double(double)> v_hi;
};

/// Iterated adaptive integration of f(u, v) over the region; the inner
/// integrals run at a tenth of the outer relative tolerance.
QuadResult integrate_2d(const Integrand2D& f, const Region2D& region, const QuadratureSpec& spec = {});

}  // namespace cellaoi::numerics
