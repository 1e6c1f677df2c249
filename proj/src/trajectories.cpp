#include "pdm/trajectories.hpp"

#include "pdm/errors.hpp"
#include "pdm/integrator.hpp"
#include "pdm/roots.hpp"

#include <cmath>
#include <string>

namespace pdm {

namespace {

void require_bound_regime(const System& sys, double E) {
    if (!sys.pt_mode())
        throw RegimeError("closed-form trajectories require the "
                          "factorization-generated potential");
    const double eps = sys.epsilon();
    if (E - eps < 0.0)
        throw RegimeError("bound trajectory requires E - epsilon >= 0 (E=" +
                          std::to_string(E) + ", epsilon=" + std::to_string(eps) + ")");
    if (sys.gamma() == +1) {
        if (!(eps > 0.0))
            throw RegimeError("gamma=+1 trajectories require epsilon > 0");
    } else {
        if (!(std::abs(E) <= std::abs(eps)))
            throw RegimeError("gamma=-1 trajectories require |E| <= |epsilon| (E=" +
                              std::to_string(E) + ", epsilon=" + std::to_string(eps) + ")");
    }
    if (!(sys.gamma() * E > 0.0))
        throw RegimeError("oscillation requires gamma * E > 0 (E=" +
                          std::to_string(E) + ")");
}

/// Amplitude of g along the shell: sqrt((E - eps) / (gamma E)).
double g_amplitude(const System& sys, double E) {
    return std::sqrt((E - sys.epsilon()) / (sys.gamma() * E));
}

double angular_frequency(const System& sys, double E) {
    return 2.0 * sys.alpha() * sqrt_gamma_h(sys.gamma(), E);
}

/// g evaluated without the strict-interior guard, so that closure endpoints
/// of the validity interval can seed root brackets.
double g_unguarded(const System& sys, double x) {
    const double u = sys.u_of_x(x);
    return sys.gamma() == +1 ? std::sin(u) : std::sinh(u);
}

} // namespace

TrajectorySpec::TrajectorySpec(System sys, double E_, double phi0_)
    : system(std::move(sys)), E(E_), phi0(phi0_) {
    require_bound_regime(system, E);
}

double oscillation_period(const System& sys, double E) {
    require_bound_regime(sys, E);
    return M_PI / std::abs(sys.alpha() * sqrt_gamma_h(sys.gamma(), E));
}

PhaseState analytic_state(const TrajectorySpec& spec, double t) {
    const System& sys = spec.system;
    const double theta = spec.phi0 + angular_frequency(sys, spec.E) * t;
    const double g_t = g_amplitude(sys, spec.E) * std::cos(theta);
    const double u_t = sys.gamma() == +1 ? std::asin(g_t) : std::asinh(g_t);
    const double x = sys.invert_j_from_anchor(u_t / sys.u_scale());
    const double f_t = sys.gamma() == +1 ? std::cos(u_t) : std::cosh(u_t);
    const double m_eff = sys.effective_mass(x);
    const double pi = -std::sqrt(2.0 * (spec.E - sys.epsilon()) * m_eff) *
                      std::sin(theta) / f_t;
    return make_phase_state(sys, t, x, pi / m_eff);
}

double invert_g(const System& sys, double target) {
    const DomainInterval& dom = sys.domain();
    double lo, hi;

    if (std::isfinite(dom.lower)) {
        lo = dom.lower;
    } else {
        lo = sys.anchor();
        double step = 1.0;
        while (g_unguarded(sys, lo) > target) {
            lo -= step;
            step *= 2.0;
            if (step > 1e12)
                throw DomainError("g target " + std::to_string(target) +
                                  " is not reached anywhere below the anchor");
        }
    }
    if (std::isfinite(dom.upper)) {
        hi = dom.upper;
    } else {
        hi = sys.anchor();
        double step = 1.0;
        while (g_unguarded(sys, hi) < target) {
            hi += step;
            step *= 2.0;
            if (step > 1e12)
                throw DomainError("g target " + std::to_string(target) +
                                  " is not reached anywhere above the anchor");
        }
    }

    const double g_lo = g_unguarded(sys, lo);
    const double g_hi = g_unguarded(sys, hi);
    if (!(g_lo <= target && target <= g_hi))
        throw DomainError("g target " + std::to_string(target) +
                          " lies outside the attained range [" +
                          std::to_string(g_lo) + ", " + std::to_string(g_hi) + "]");

    RootConfig rc;
    rc.x_tol = 1e-15;
    rc.f_tol = 1e-13;
    const double a = sys.u_scale();
    auto fn = [&](double x) { return g_unguarded(sys, x) - target; };
    auto dfn = [&](double x) {
        const double u = sys.u_of_x(x);
        const double fu = sys.gamma() == +1 ? std::cos(u) : std::cosh(u);
        return a * sys.j_factor(x) * fu;
    };
    return solve_bracketed(fn, dfn, lo, hi, rc);
}

double phi0_from_state(const System& sys, double E, double x0, double pi0) {
    require_bound_regime(sys, E);
    const double H = invariant_H_value(sys, x0, pi0);
    if (std::abs(H - E) > 1e-8 * std::max(1.0, std::abs(E)))
        throw ConfigError("initial state is off the energy shell: H(x0, pi0) = " +
                          std::to_string(H) + " but E = " + std::to_string(E));
    const double amp = g_amplitude(sys, E);
    if (amp == 0.0)
        return 0.0; // fixed point at the well bottom: phase is arbitrary
    const double cos_phi = sys.g(x0) / amp;
    const double sin_phi =
        -pi0 * sys.f(x0) /
        std::sqrt(2.0 * (E - sys.epsilon()) * sys.effective_mass(x0));
    return std::atan2(sin_phi, cos_phi);
}

Trajectory sample_trajectory(const TrajectorySpec& spec, double t0, double t1,
                             int n) {
    if (n < 2)
        throw ConfigError("sample_trajectory needs at least 2 samples");
    if (!(t1 > t0))
        throw ConfigError("sample_trajectory needs t1 > t0");

    Trajectory traj;
    traj.picture = Picture::Invariant;
    traj.period = oscillation_period(spec.system, spec.E);
    traj.energy = spec.E;

    const double dt = (t1 - t0) / (n - 1);
    for (int i = 0; i < n; ++i) {
        const double t = (i == n - 1) ? t1 : t0 + i * dt;
        PhaseState st;
        try {
            st = analytic_state(spec, t);
        } catch (const DomainError&) {
            if (traj.samples.empty())
                throw; // nothing to continue from: report the regime failure
            // The closed form left its invertible range (unbounded motion):
            // continue numerically from the last valid sample.
            const PhaseState& last = traj.samples.back().state;
            IntegratorConfig cfg;
            Trajectory tail = integrate_picture(spec.system, Picture::Invariant,
                                                last.x, last.v, last.t, t1,
                                                n - i + 1, cfg);
            for (std::size_t k = 1; k < tail.samples.size(); ++k)
                traj.samples.push_back(tail.samples[k]);
            traj.domain_exit = tail.domain_exit;
            traj.exit_time = tail.exit_time;
            return traj;
        }
        traj.samples.push_back(
            make_trajectory_sample(spec.system, st, Picture::Invariant));
    }
    return traj;
}

} // namespace pdm
