#pragma once

#include <functional>

namespace pdm {

struct RootConfig {
    double x_tol = 1e-14;   ///< absolute bracket-width target, scaled by max(1,|x|)
    double f_tol = 1e-13;   ///< residual target
    int max_iter = 200;
};

/// Solve f(x) = 0 for a strictly monotone f on the bracket [lo, hi].
/// Bisection narrows the bracket until Newton (using df) is safe, after
/// which Newton steps are taken with bisection fallback whenever an iterate
/// would leave the bracket. f(lo) and f(hi) must have opposite signs (one of
/// them may be zero). Throws NumericalError on a bad bracket or if max_iter
/// is exhausted; the message reports the residual reached.
double solve_bracketed(const std::function<double(double)>& f,
                       const std::function<double(double)>& df,
                       double lo, double hi,
                       const RootConfig& cfg = {});

} // namespace pdm
