#include "pdm/transforms.hpp"

#include "pdm/errors.hpp"
#include "pdm/quadrature.hpp"

#include <cmath>
#include <string>

namespace pdm {

std::pair<double, double> point_transform(const System& sys, double x, double p) {
    sys.require_in_domain(x, "point_transform");
    auto integrand = [&sys](double s) {
        return std::sqrt(sys.newton_mass(s) / sys.m0());
    };
    const double Q =
        integrate_adaptive(integrand, sys.anchor(), x, sys.quadrature()).value;
    const double P = std::sqrt(sys.m0() / sys.newton_mass(x)) * p;
    return {Q, P};
}

std::pair<double, double> tilde_transform(const System& sys, double x, double pi) {
    sys.require_in_domain(x, "tilde_transform");
    return {sys.j_from_anchor(x), pi / sys.j_factor(x)};
}

double constant_mass_K(double m0, double Q, double P,
                       const std::function<double(double)>& V) {
    if (!(m0 > 0.0)) throw ConfigError("constant_mass_K requires m0 > 0");
    return P * P / (2.0 * m0) + (V ? V(Q) : 0.0);
}

double tilde_potential(const System& sys, double Qt) {
    if (!sys.pt_mode())
        throw RegimeError("the transformed potential has a closed form only "
                          "for the factorization-generated potential");
    const double u = sys.u_scale() * Qt;
    if (sys.gamma() == +1) {
        const double cu = std::cos(u);
        if (!(std::abs(u) < M_PI / 2.0))
            throw DomainError("transformed coordinate " + std::to_string(Qt) +
                              " lies outside the trigonometric window");
        return sys.epsilon() / (cu * cu);
    }
    const double ch = std::cosh(u);
    return sys.epsilon() / (ch * ch);
}

double constant_mass_K_tilde(const System& sys, double Qt, double Pt) {
    return Pt * Pt / (2.0 * sys.m0()) + tilde_potential(sys, Qt);
}

double lanczos_equivalent_force(double F, double v, double E0, double m0,
                                double dV0dx) {
    if (v == 0.0)
        throw RegimeError("the equivalent-force map is singular at v = 0");
    if (!(m0 > 0.0)) throw ConfigError("lanczos_equivalent_force requires m0 > 0");
    if (E0 == 0.0) throw ConfigError("lanczos_equivalent_force requires E0 != 0");
    return -(2.0 * E0 / (m0 * v * v)) * F + 2.0 * dV0dx;
}

} // namespace pdm
