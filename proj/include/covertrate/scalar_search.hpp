// One-dimensional search on concave functions over a closed interval.
#pragma once

#include <functional>
#include <optional>

namespace covert::solver {

using ScalarFn = std::function<double(double)>;

struct Interval {
    double lo = 0.0;
    double hi = 1.0;
};

/// Golden-section maximization of a concave f on [lo, hi] to bracket width
/// tol. The endpoints are compared against the interior estimate, so
/// boundary maximizers are returned exactly.
double golden_section_max(const ScalarFn& f, double lo, double hi, double tol = 1e-10);

/// {x in [lo, hi] : f(x) >= level} for concave f, which is an interval.
/// Boundaries are located by bisection and rounded toward the feasible side.
std::optional<Interval> superlevel_interval(const ScalarFn& f, double lo, double hi,
                                            double level);

/// Same for the affine function c + s*x, in closed form.
std::optional<Interval> affine_superlevel_interval(double c, double s, double lo,
                                                   double hi, double level);

}  // namespace covert::solver
