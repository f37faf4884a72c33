#pragma once

#include <cmath>

namespace hear::detail {

// Bisection for a sign change of fn on [lo, hi]. Runs until the midpoint stops
// moving or max_iter is hit; returns the final midpoint. iters receives the
// number of halvings.
template <class Fn>
double bisect(Fn&& fn, double lo, double hi, int max_iter, int& iters) {
    const bool lo_negative = fn(lo) < 0.0;
    iters = 0;
    for (; iters < max_iter; ++iters) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi)
            break;
        if ((fn(mid) < 0.0) == lo_negative)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

} // namespace hear::detail
