#include "pdm/dynamics.hpp"
#include "pdm/errors.hpp"
#include "pdm/quadrature.hpp"

#include <algorithm>
#include <cmath>

namespace pdm {

PhaseState make_phase_state(const System& sys, double t, double x, double v) {
    PhaseState s;
    s.t = t;
    s.x = x;
    s.v = v;
    s.p = sys.newton_mass(x) * v;
    s.pi = sys.effective_mass(x) * v;
    return s;
}

std::pair<double, double> newton_rhs(const System& sys, double x, double v, double) {
    const double m = sys.newton_mass(x);
    const double dm = sys.newton_mass_derivative(x);
    const double F = -sys.potential_derivative(x);
    return {v, (F - dm * v * v) / m};
}

double lagrangian_value(const System& sys, double x, double v) {
    return 0.5 * sys.newton_mass(x) * v * v - sys.potential(x);
}

double hamiltonian_script_value(const System& sys, double x, double p) {
    return p * p / (2.0 * sys.newton_mass(x)) + sys.potential(x);
}

double thrust_value(const System& sys, double x, double p) {
    const double m = sys.newton_mass(x);
    return -(sys.newton_mass_derivative(x) / m) * p * p / (2.0 * m);
}

double power_value(const System& sys, double x, double v) {
    return -0.5 * sys.newton_mass_derivative(x) * v * v * v;
}

std::pair<double, double> canonical_rhs(const System& sys, double x, double p, double) {
    const double m = sys.newton_mass(x);
    const double dm = sys.newton_mass_derivative(x);
    const double dH_dx = -dm / m * p * p / (2.0 * m) + sys.potential_derivative(x);
    return {p / m, -dH_dx + thrust_value(sys, x, p)};
}

double effective_potential_value(const System& sys, double x) {
    return sys.effective_potential(x);
}

double invariant_H_value(const System& sys, double x, double pi) {
    return pi * pi / (2.0 * sys.effective_mass(x)) + sys.effective_potential(x);
}

std::pair<double, double> invariant_rhs(const System& sys, double x, double pi, double) {
    const double me = sys.effective_mass(x);
    const double dme = sys.effective_mass_derivative(x);
    return {pi / me,
            pi * pi * dme / (2.0 * me * me) - sys.effective_potential_derivative(x)};
}

ReductionReport standard_lagrangian_reduction(const System& sys, int n_x, int n_v) {
    const DomainInterval dom = sys.domain();
    const double c = sys.anchor();
    double lo = std::isfinite(dom.lower) ? dom.lower : c - 3.0;
    double hi = std::isfinite(dom.upper) ? dom.upper : c + 3.0;
    const double pad = 0.05 * (hi - lo);
    lo += pad;
    hi -= pad;

    // Evaluate the reduced form (1/2) v^2 e^{I_b} - integral of (1/m) V' e^{I_b}
    // with I_b = ln m, keeping the integrand deliberately unsimplified so the
    // comparison against m*L exercises the reduction rather than an identity.
    const auto e_Ib = [&](double s) { return std::exp(std::log(sys.newton_mass(s))); };
    const auto integrand = [&](double s) {
        return (1.0 / sys.newton_mass(s)) * sys.potential_derivative(s) * e_Ib(s);
    };

    ReductionReport report;
    for (int i = 0; i < n_x; ++i) {
        const double x = lo + (hi - lo) * i / (n_x - 1);
        const double pot =
            sys.potential(c) + integrate_adaptive(integrand, c, x, sys.quadrature()).value;
        const double eIb = e_Ib(x);
        for (int j = 0; j < n_v; ++j) {
            const double v = -2.0 + 4.0 * j / (n_v - 1);
            const double reduced = 0.5 * v * v * eIb - pot;
            const double direct = lagrangian_value(sys, x, v);
            report.max_abs_deviation =
                std::max(report.max_abs_deviation, std::abs(reduced - direct));
            ++report.samples;
        }
    }
    return report;
}

} // namespace pdm
