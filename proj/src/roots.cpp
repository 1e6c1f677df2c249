#include "pdm/roots.hpp"
#include "pdm/errors.hpp"

#include <cmath>
#include <sstream>

namespace pdm {

double solve_bracketed(const std::function<double(double)>& f,
                       const std::function<double(double)>& df,
                       double lo, double hi,
                       const RootConfig& cfg) {
    if (!(lo <= hi))
        throw NumericalError("root bracket is empty");
    double flo = f(lo);
    double fhi = f(hi);
    if (flo == 0.0)
        return lo;
    if (fhi == 0.0)
        return hi;
    if ((flo > 0.0) == (fhi > 0.0)) {
        std::ostringstream msg;
        msg << "root bracket [" << lo << ", " << hi << "] does not change sign (f="
            << flo << ", " << fhi << ")";
        throw NumericalError(msg.str());
    }

    double x = 0.5 * (lo + hi);
    double fx = f(x);
    for (int it = 0; it < cfg.max_iter; ++it) {
        if (std::abs(fx) <= cfg.f_tol)
            return x;
        if ((fx > 0.0) == (fhi > 0.0)) {
            hi = x;
            fhi = fx;
        } else {
            lo = x;
            flo = fx;
        }
        const double width = hi - lo;
        if (width <= cfg.x_tol * std::max(1.0, std::abs(x)))
            return x;

        double next = x;
        const double d = df(x);
        bool newton_ok = false;
        if (d != 0.0 && std::isfinite(d)) {
            next = x - fx / d;
            newton_ok = std::isfinite(next) && next > lo && next < hi;
        }
        if (!newton_ok)
            next = lo + 0.5 * width;
        x = next;
        fx = f(x);
    }
    std::ostringstream msg;
    msg << "root solve exhausted " << cfg.max_iter << " iterations, residual " << std::abs(fx);
    throw NumericalError(msg.str());
}

} // namespace pdm
