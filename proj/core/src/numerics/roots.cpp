#include "cellaoi/numerics/roots.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cellaoi/error.hpp"

namespace cellaoi::numerics {

namespace {

double norm(const Vec2& r) { return std::max(std::abs(r[0]), std::abs(r[1])); }

bool finite(const Vec2& r) { return std::isfinite(r[0]) && std::isfinite(r[1]); }

struct NewtonOutcome {
  double x, y;
  Vec2 r;
  int iterations;
  bool converged;
};

NewtonOutcome newton(const System2D& F, double x, double y, const RootOptions& opts) {
  Vec2 r = F(x, y);
  if (!finite(r)) return {x, y, r, 0, false};
  int it = 0;
  for (; it < opts.max_iterations; ++it) {
    if (norm(r) <= opts.tol) return {x, y, r, it, true};
    const double hx = opts.fd_step * std::max(1.0, std::abs(x));
    const double hy = opts.fd_step * std::max(1.0, std::abs(y));
    const Vec2 rxp = F(x + hx, y), rxm = F(x - hx, y);
    const Vec2 ryp = F(x, y + hy), rym = F(x, y - hy);
    const double j11 = (rxp[0] - rxm[0]) / (2 * hx), j12 = (ryp[0] - rym[0]) / (2 * hy);
    const double j21 = (rxp[1] - rxm[1]) / (2 * hx), j22 = (ryp[1] - rym[1]) / (2 * hy);
    const double det = j11 * j22 - j12 * j21;
    if (!std::isfinite(det) || det == 0.0) break;
    const double dx = -(j22 * r[0] - j12 * r[1]) / det;
    const double dy = -(-j21 * r[0] + j11 * r[1]) / det;

    double step = 1.0;
    bool improved = false;
    for (int k = 0; k < 40; ++k, step *= 0.5) {
      const double nx = x + step * dx, ny = y + step * dy;
      const Vec2 nr = F(nx, ny);
      if (finite(nr) && norm(nr) < norm(r)) {
        x = nx;
        y = ny;
        r = nr;
        improved = true;
        break;
      }
    }
    if (!improved) break;
  }
  return {x, y, r, it, norm(r) <= opts.tol};
}

// Expands a bracket around x0 for g and bisects; returns false when no sign
// change is found.
bool bracket_root(const std::function<double(double)>& g, double x0, double& root) {
  const double g0 = g(x0);
  if (!std::isfinite(g0)) return false;
  if (g0 == 0.0) {
    root = x0;
    return true;
  }
  double step = 0.1 * std::max(1.0, std::abs(x0));
  for (int k = 0; k < 60; ++k, step *= 2.0) {
    for (double cand : {x0 - step, x0 + step}) {
      const double gc = g(cand);
      if (std::isfinite(gc) && (gc > 0) != (g0 > 0)) {
        root = bisect(g, std::min(x0, cand), std::max(x0, cand));
        return true;
      }
    }
  }
  return false;
}

}  // namespace

double bisect(const std::function<double(double)>& f, double lo, double hi, double tol, int max_iterations) {
  double flo = f(lo), fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0) == (fhi > 0)) throw Error(ErrorCode::DomainError, "bisect: root is not bracketed");
  for (int i = 0; i < max_iterations && (hi - lo) > tol * std::max(1.0, std::abs(lo)); ++i) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm > 0) == (flo > 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

Root2D solve_2d_root(const System2D& F, Vec2 init, const RootOptions& opts) {
  auto nt = newton(F, init[0], init[1], opts);
  if (nt.converged) return {nt.x, nt.y, norm(nt.r), nt.iterations, false};

  // Gauss-Seidel sweeps: solve F1 for x at fixed y, then F2 for y at fixed x.
  double x = finite(nt.r) ? nt.x : init[0];
  double y = finite(nt.r) ? nt.y : init[1];
  Vec2 r = F(x, y);
  int it = nt.iterations;
  for (int sweep = 0; sweep < opts.max_iterations; ++sweep, ++it) {
    if (finite(r) && norm(r) <= opts.tol) return {x, y, norm(r), it, true};
    double nx = x, ny = y;
    if (!bracket_root([&](double t) { return F(t, y)[0]; }, x, nx)) break;
    if (!bracket_root([&](double t) { return F(nx, t)[1]; }, y, ny)) break;
    x = nx;
    y = ny;
    r = F(x, y);
    // polish with Newton once the sweep has moved close
    auto polish = newton(F, x, y, opts);
    if (polish.converged) return {polish.x, polish.y, norm(polish.r), it + polish.iterations, true};
  }
  const double last = finite(r) ? norm(r) : norm(nt.r);
  throw Error(ErrorCode::NoConvergence,
              "solve_2d_root: no convergence, last residual " + std::to_string(last));
}

}  // namespace cellaoi::numerics
