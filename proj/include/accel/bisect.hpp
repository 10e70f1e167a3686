// Bracketing bisection for monotone scalar functions.
#pragma once

#include <cmath>
#include <concepts>

namespace accel {

struct BisectionResult {
    double root = 0.0;
    int iterations = 0;
    bool converged = false;
};

/// Finds x in [lo, hi] with f(x) ~ 0 given f(lo) and f(hi) of opposite sign
/// (the caller checks the bracket). Stops when stop(x, f(x)) holds or after
/// max_iterations halvings.
template <std::invocable<double> F, std::predicate<double, double> Stop>
BisectionResult bisect(F&& f, double lo, double hi, Stop&& stop, int max_iterations = 200) {
    double f_lo = f(lo);
    BisectionResult out;
    for (out.iterations = 1; out.iterations <= max_iterations; ++out.iterations) {
        const double mid = 0.5 * (lo + hi);
        const double f_mid = f(mid);
        out.root = mid;
        if (stop(mid, f_mid)) {
            out.converged = true;
            return out;
        }
        if (std::signbit(f_mid) == std::signbit(f_lo)) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    out.iterations = max_iterations;
    return out;
}

}  // namespace accel
