#pragma once

#include <functional>

namespace pdm {

struct QuadratureConfig {
    double abs_tol = 1e-12;
    double rel_tol = 1e-10;
    int max_depth = 48;
};

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0; ///< accumulated |K15 - G7| over accepted panels
    int panels = 0;              ///< number of accepted panels
};

/// Adaptive Gauss-Kronrod (G7/K15) integration of f over [a, b].
/// Panels are bisected until the embedded error estimate meets the tolerance,
/// apportioned by panel width. Throws NumericalError if max_depth is exhausted
/// before the tolerance is met; the message reports the achieved estimate.
/// a > b is allowed and yields the signed integral.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f,
                                    double a, double b,
                                    const QuadratureConfig& cfg = {});

} // namespace pdm
