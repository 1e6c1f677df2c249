#include "pdm/elliptic.hpp"
#include "pdm/errors.hpp"

#include <cmath>
#include <sstream>

namespace pdm {

double elliptic_e_int(double phi, double beta, const QuadratureConfig& cfg) {
    if (!std::isfinite(phi) || !std::isfinite(beta))
        throw ConfigError("elliptic_e_int: non-finite argument");
    if (phi == 0.0)
        return 0.0;
    if (beta > 0.0) {
        const double peak = std::sin(std::min(std::abs(phi), std::asin(1.0)));
        if (beta * peak * peak >= 1.0) {
            std::ostringstream msg;
            msg << "elliptic_e_int requires beta*sin^2(u) < 1 on the integration range; "
                << "beta=" << beta << ", phi=" << phi;
            throw RegimeError(msg.str());
        }
    }
    const auto integrand = [beta](double u) {
        const double s = std::sin(u);
        return std::sqrt(1.0 - beta * s * s);
    };
    return integrate_adaptive(integrand, 0.0, phi, cfg).value;
}

} // namespace pdm
