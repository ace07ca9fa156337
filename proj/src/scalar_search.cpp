#include "covertrate/scalar_search.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace covert::solver {

double golden_section_max(const ScalarFn& f, double lo, double hi, double tol) {
    if (!(hi > lo)) return lo;
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo;
    double b = hi;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c);
    double fd = f(d);
    while (b - a > tol) {
        if (fc >= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    double best = 0.5 * (a + b);
    double best_value = f(best);
    for (double x : {lo, hi}) {
        const double v = f(x);
        if (v > best_value) {
            best = x;
            best_value = v;
        }
    }
    return best;
}

std::optional<Interval> superlevel_interval(const ScalarFn& f, double lo, double hi,
                                            double level) {
    const double peak = golden_section_max(f, lo, hi);
    if (!(f(peak) >= level)) return std::nullopt;

    Interval out{lo, hi};
    if (!(f(lo) >= level)) {
        double bad = lo;
        double good = peak;
        for (int k = 0; k < 200 && good - bad > 1e-15; ++k) {
            const double mid = 0.5 * (bad + good);
            if (f(mid) >= level) {
                good = mid;
            } else {
                bad = mid;
            }
        }
        out.lo = good;
    }
    if (!(f(hi) >= level)) {
        double good = peak;
        double bad = hi;
        for (int k = 0; k < 200 && bad - good > 1e-15; ++k) {
            const double mid = 0.5 * (bad + good);
            if (f(mid) >= level) {
                good = mid;
            } else {
                bad = mid;
            }
        }
        out.hi = good;
    }
    return out;
}

std::optional<Interval> affine_superlevel_interval(double c, double s, double lo,
                                                   double hi, double level) {
    auto f = [&](double x) { return c + s * x; };
    if (s == 0.0) {
        if (c >= level) return Interval{lo, hi};
        return std::nullopt;
    }
    double root = (level - c) / s;
    Interval out{lo, hi};
    if (s > 0.0) {
        if (root > lo) {
            for (int k = 0; k < 64 && f(root) < level; ++k) {
                root = std::nextafter(root, std::numeric_limits<double>::infinity());
            }
            out.lo = root;
        }
    } else {
        if (root < hi) {
            for (int k = 0; k < 64 && f(root) < level; ++k) {
                root = std::nextafter(root, -std::numeric_limits<double>::infinity());
            }
            out.hi = root;
        }
    }
    if (out.lo > out.hi) return std::nullopt;
    return out;
}

}  // namespace covert::solver
