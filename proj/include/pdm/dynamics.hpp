#pragma once

#include "pdm/system.hpp"

#include <utility>

namespace pdm {

/// A phase-space point carrying both momentum pictures: p = m(x) v in the
/// Newton picture and pi = m_eff(x) v in the invariant picture.
struct PhaseState {
    double t = 0.0;
    double x = 0.0;
    double v = 0.0;
    double p = 0.0;
    double pi = 0.0;
};

/// Build a PhaseState from (t, x, v), deriving both momenta from v.
PhaseState make_phase_state(const System& sys, double t, double x, double v);

/// Newton picture, second-order form: returns (dx/dt, dv/dt) with
/// dv/dt = [F - m'(x) v^2] / m(x) and F = -V'(x).
std::pair<double, double> newton_rhs(const System& sys, double x, double v, double t = 0.0);

/// L = (1/2) m(x) v^2 - V(x).
double lagrangian_value(const System& sys, double x, double v);

/// Dissipative Hamiltonian of the Newton picture: p^2/(2m) + V.
double hamiltonian_script_value(const System& sys, double x, double p);

/// Reacting thrust R = -(m'/m) p^2/(2m); quadratic in momentum.
double thrust_value(const System& sys, double x, double p);

/// dH_script/dt along the motion: -(1/2) m'(x) v^3.
double power_value(const System& sys, double x, double v);

/// Canonical (x, p) picture: (dH/dp, -dH/dx + R), assembled from analytic
/// partials. The mass-gradient term and the thrust cancel algebraically, so
/// dp/dt = -V'(x) exactly; both routes are kept and asserted in tests.
std::pair<double, double> canonical_rhs(const System& sys, double x, double p, double t = 0.0);

/// V_eff(x), anchored so that V_eff(c) matches the closed form (= epsilon
/// for Poschl-Teller systems).
double effective_potential_value(const System& sys, double x);

/// Conserved Hamiltonian of the invariant picture: pi^2/(2 m_eff) + V_eff.
double invariant_H_value(const System& sys, double x, double pi);

/// Invariant (x, pi) picture: (pi/m_eff, pi^2 m_eff'/(2 m_eff^2) - V_eff').
std::pair<double, double> invariant_rhs(const System& sys, double x, double pi, double t = 0.0);

struct ReductionReport {
    double max_abs_deviation = 0.0;
    int samples = 0;
};

/// Samples the standard-Lagrangian form (1/2) v^2 e^{I_b} - integral of
/// (1/m) V' e^{I_b}, with I_b = ln m, against lagrangian_value on a grid and
/// reports the largest absolute deviation. The two agree identically; the
/// deviation measures only quadrature error.
ReductionReport standard_lagrangian_reduction(const System& sys, int n_x = 25, int n_v = 5);

} // namespace pdm
