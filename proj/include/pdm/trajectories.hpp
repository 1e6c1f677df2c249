#pragma once

#include "pdm/elliptic.hpp"
#include "pdm/system.hpp"
#include "pdm/trajectory.hpp"

namespace pdm {

/// A bound oscillation of a Poschl-Teller-type system, labelled by its
/// conserved energy E and the phase offset phi0 at t = 0.
///
/// Valid regimes: E - epsilon >= 0 and gamma*E > 0 (trapped above the well
/// minimum for gamma = +1, inside the inverted well for gamma = -1).
struct TrajectorySpec {
    System system;
    double E = 0.0;
    double phi0 = 0.0;

    TrajectorySpec(System sys, double E, double phi0 = 0.0);
};

/// Period of the bound oscillation, pi / (alpha * sqrt(gamma E)).
double oscillation_period(const System& sys, double E);

/// Closed-form state at time t.
///
/// The deformed coordinate follows g(x(t)) = sqrt((E-eps)/(gamma E)) cos(theta)
/// with theta = phi0 + 2 alpha sqrt(gamma E) t, and the invariant momentum is
/// pi(t) = -sqrt(2 (E-eps) m_eff(x)) sin(theta) / f(x).  x(t) is recovered by
/// inverting the mass integral (closed form for the Singular, Regular and
/// Exponential families; numeric inversion for DoublySingular).
PhaseState analytic_state(const TrajectorySpec& spec, double t);

/// Invert g(x) = target over the system domain.  Throws DomainError when the
/// target lies outside the range of g.
double invert_g(const System& sys, double target);

/// Recover the phase offset phi0 from an initial condition (x0, pi0) on the
/// energy shell E.  Throws ConfigError when the point is not on the shell.
double phi0_from_state(const System& sys, double E, double x0, double pi0);

/// Sample the closed-form trajectory on n uniform times across [t0, t1],
/// attaching H_script / H_inv / |Q|^2 diagnostics per sample.
Trajectory sample_trajectory(const TrajectorySpec& spec, double t0, double t1,
                             int n);

} // namespace pdm
