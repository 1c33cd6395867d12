#include "cellaoi/numerics/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>
#include <vector>

namespace cellaoi::numerics {

void QuadratureSpec::check() const {
  if (!(rel_tol > 0.0)) throw Error(ErrorCode::DomainError, "QuadratureSpec: rel_tol must be > 0");
  if (!(abs_tol >= 0.0)) throw Error(ErrorCode::DomainError, "QuadratureSpec: abs_tol must be >= 0");
  if (max_subdivisions < 10)
    throw Error(ErrorCode::DomainError, "QuadratureSpec: max_subdivisions must be >= 10");
}

QuadratureError::QuadratureError(const std::string& what, QuadResult best)
    : Error(ErrorCode::ToleranceNotMet, what), best_(best) {}

namespace {

// Kronrod 15-point abscissae; odd indices (1,3,5) plus the centre are the
// embedded 7-point Gauss nodes.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double a, b, value, error;
  bool operator<(const Segment& o) const { return error < o.error; }
};

Segment gk15(const Integrand& f, double a, double b, int& evals) {
  const double centre = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(centre);
  double resk = fc * kWgk[7];
  double resg = fc * kWg[3];
  double resabs = std::abs(resk);
  std::array<double, 7> f1{}, f2{};
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    f1[j] = f(centre - dx);
    f2[j] = f(centre + dx);
    resk += kWgk[j] * (f1[j] + f2[j]);
    resabs += kWgk[j] * (std::abs(f1[j]) + std::abs(f2[j]));
    if (j % 2 == 1) resg += kWg[j / 2] * (f1[j] + f2[j]);
  }
  evals += 15;
  const double mean = resk * 0.5;
  double resasc = kWgk[7] * std::abs(fc - mean);
  for (int j = 0; j < 7; ++j)
    resasc += kWgk[j] * (std::abs(f1[j] - mean) + std::abs(f2[j] - mean));

  const double value = resk * half;
  resabs *= std::abs(half);
  resasc *= std::abs(half);
  double err = std::abs((resk - resg) * half);
  if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  constexpr double kEps = std::numeric_limits<double>::epsilon();
  constexpr double kUflow = std::numeric_limits<double>::min();
  if (resabs > kUflow / (50.0 * kEps)) err = std::max(kEps * 50.0 * resabs, err);
  return {a, b, value, err};
}

QuadResult adaptive(const Integrand& f, double a, double b, const QuadratureSpec& spec) {
  QuadResult out;
  std::priority_queue<Segment> heap;
  Segment first = gk15(f, a, b, out.evaluations);
  heap.push(first);
  double total = first.value;
  double total_err = first.error;
  auto tolerance = [&] { return std::max(spec.abs_tol, spec.rel_tol * std::abs(total)); };

  while (total_err > tolerance()) {
    if (out.subdivisions >= spec.max_subdivisions) break;
    Segment worst = heap.top();
    const double mid = 0.5 * (worst.a + worst.b);
    // interval can no longer be split in floating point
    if (!(mid > worst.a && mid < worst.b)) break;
    heap.pop();
    Segment left = gk15(f, worst.a, mid, out.evaluations);
    Segment right = gk15(f, mid, worst.b, out.evaluations);
    ++out.subdivisions;
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
  }

  // re-sum to shed accumulated cancellation from the running updates
  double sum = 0.0, err = 0.0;
  while (!heap.empty()) {
    sum += heap.top().value;
    err += heap.top().error;
    heap.pop();
  }
  out.value = sum;
  out.abs_error = err;
  out.converged = std::isfinite(sum) && err <= std::max(spec.abs_tol, spec.rel_tol * std::abs(sum));
  return out;
}

}  // namespace

QuadResult try_integrate_1d(const Integrand& f, double a, double b, const QuadratureSpec& spec) {
  spec.check();
  if (std::isnan(a) || std::isnan(b) || (std::isinf(a) && a < 0))
    throw Error(ErrorCode::DomainError, "integrate_1d: lower limit must be finite");
  if (a == b) return {};
  if (b < a) {
    auto r = try_integrate_1d(f, b, a, spec);
    r.value = -r.value;
    return r;
  }
  if (std::isinf(b)) {
    if (spec.semi_infinite_map == SemiInfiniteMap::Rational) {
      auto g = [&](double t) {
        const double s = 1.0 - t;
        return f(a + t / s) / (s * s);
      };
      return adaptive(g, 0.0, 1.0, spec);
    }
    auto g = [&](double t) {
      const double s = 1.0 - t;
      return f(a - std::log(s)) / s;
    };
    return adaptive(g, 0.0, 1.0, spec);
  }
  return adaptive(f, a, b, spec);
}

QuadResult integrate_1d(const Integrand& f, double a, double b, const QuadratureSpec& spec) {
  auto r = try_integrate_1d(f, a, b, spec);
  if (!r.converged)
    throw QuadratureError("integrate_1d: estimated error " + std::to_string(r.abs_error) +
                              " exceeds tolerance (best estimate " + std::to_string(r.value) + ")",
                          r);
  return r;
}

QuadResult integrate_2d(const Integrand2D& f, const Region2D& region, const QuadratureSpec& spec) {
  spec.check();
  if (!region.v_hi) throw Error(ErrorCode::DomainError, "integrate_2d: region needs an upper v bound");
  auto inner_spec = spec;
  inner_spec.rel_tol = spec.rel_tol * 0.1;
  inner_spec.abs_tol = spec.abs_tol * 0.1;
  bool inner_ok = true;
  int inner_evals = 0;
  auto outer = [&](double u) {
    auto g = [&](double v) { return f(u, v); };
    auto r = try_integrate_1d(g, region.v_lo(u), region.v_hi(u), inner_spec);
    inner_ok = inner_ok && r.converged;
    inner_evals += r.evaluations;
    return r.value;
  };
  auto r = try_integrate_1d(outer, region.u_lo, region.u_hi, spec);
  r.evaluations += inner_evals;
  r.converged = r.converged && inner_ok;
  if (!r.converged)
    throw QuadratureError("integrate_2d: tolerance not met (best estimate " + std::to_string(r.value) + ")",
                          r);
  return r;
}

}  // namespace cellaoi::numerics
