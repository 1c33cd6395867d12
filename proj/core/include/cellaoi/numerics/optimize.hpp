#pragma once

#include <functional>

namespace cellaoi::numerics {

struct Maximum1D {
  double x;
  double value;
};

/// Golden-section search for the maximum of a unimodal f on [lo, hi]; stops
/// when the bracket is narrower than tol. Endpoints are compared at the end so
/// monotone functions return the boundary.
Maximum1D golden_section_maximize(const std::function<double(double)>& f, double lo, double hi,
                                  double tol);

}  // namespace cellaoi::numerics
