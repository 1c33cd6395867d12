#pragma once

#include <array>
#include <functional>

namespace cellaoi::numerics {

using Vec2 = std::array<double, 2>;
using System2D = std::function<Vec2(double, double)>;

struct RootOptions {
  double tol = 1e-12;     ///< target for max(|r1|, |r2|)
  int max_iterations = 200;
  double fd_step = 1e-7;  ///< relative finite-difference step for the Jacobian
};

struct Root2D {
  double x = 0.0;
  double y = 0.0;
  double residual = 0.0;  ///< max-norm of F at (x, y)
  int iterations = 0;
  bool used_fallback = false;
};

/// Damped Newton with backtracking on the residual norm; falls back to
/// alternating coordinate bisection when Newton stalls. Throws NO_CONVERGENCE
/// (reporting the last residual) when neither reaches tol.
Root2D solve_2d_root(const System2D& F, Vec2 init, const RootOptions& opts = {});

/// Bracketing bisection for a scalar root in [lo, hi]; f(lo) and f(hi) must
/// differ in sign.
double bisect(const std::function<double(double)>& f, double lo, double hi, double tol = 1e-14,
              int max_iterations = 200);

}  // namespace cellaoi::numerics
