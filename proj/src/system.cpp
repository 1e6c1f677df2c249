#include "pdm/system.hpp"
#include "pdm/errors.hpp"
#include "pdm/roots.hpp"

#include <cmath>
#include <sstream>
#include <utility>

namespace pdm {

PotentialSpec PotentialSpec::poschl_teller() {
    PotentialSpec p;
    p.kind = Kind::PoschlTeller;
    return p;
}

PotentialSpec PotentialSpec::user(std::function<double(double)> V,
                                  std::function<double(double)> dV) {
    if (!V || !dV)
        throw ConfigError("PotentialSpec::user: V and analytic dV are both required");
    PotentialSpec p;
    p.kind = Kind::User;
    p.V = std::move(V);
    p.dV = std::move(dV);
    return p;
}

System::System(MassModel mass, PotentialSpec potential, int gamma, double alpha,
               double epsilon, double c, QuadratureConfig quad)
    : mass_(std::move(mass)),
      potential_(std::move(potential)),
      gamma_(gamma),
      alpha_(alpha),
      epsilon_(epsilon),
      c_(c),
      quad_(quad),
      u_scale_(std::sqrt(2.0 * alpha * alpha * mass_.m0)) {
    if (gamma_ != 1 && gamma_ != -1)
        throw ConfigError("System: gamma must be +1 or -1");
    if (alpha_ == 0.0)
        throw ConfigError("System: alpha must be nonzero");
    if (gamma_ == 1 && epsilon_ < 0.0)
        throw ConfigError("System: gamma=+1 requires epsilon >= 0 (trigonometric branch)");
    if (gamma_ == -1 && epsilon_ > 0.0)
        throw ConfigError("System: gamma=-1 requires epsilon <= 0 (hyperbolic branch)");
    if (!mass_domain(mass_).interior_contains(c_))
        throw ConfigError("System: anchor c must lie inside the mass domain");
    // epsilon = 0 degenerates the Poschl-Teller potential to the free system,
    // so no trigonometric clipping applies.
    const bool clipped = pt_mode() && epsilon_ != 0.0;
    domain_ = domain_for_anchor(mass_, clipped ? gamma_ : -1, alpha_, c_);
}

void System::require_in_domain(double x, const char* op) const {
    if (domain_.interior_contains(x))
        return;
    const bool below = x <= domain_.lower;
    std::ostringstream msg;
    msg << op << ": x = " << x << " is outside the validity domain "
        << domain_.to_string() << "; offending bound: "
        << (below ? domain_.lower : domain_.upper) << (below ? " (lower)" : " (upper)");
    throw DomainError(msg.str());
}

double System::newton_mass(double x) const {
    const double mu = mass_at(mass_, x);
    return pt_mode() ? std::sqrt(mass_.m0 * mu) : mu;
}

double System::newton_mass_derivative(double x) const {
    const double dmu = mass_derivative_at(mass_, x);
    if (!pt_mode())
        return dmu;
    const double mu = mass_at(mass_, x);
    return 0.5 * dmu * std::sqrt(mass_.m0 / mu);
}

double System::effective_mass(double x) const {
    return pt_mode() ? mass_at(mass_, x) : effective_mass_at(mass_, x);
}

double System::effective_mass_derivative(double x) const {
    const double dmu = mass_derivative_at(mass_, x);
    if (pt_mode())
        return dmu;
    return 2.0 * mass_at(mass_, x) * dmu / mass_.m0;
}

double System::j_factor(double x) const {
    return std::sqrt(effective_mass(x) / mass_.m0);
}

double System::j_from_anchor(double x) const {
    if (pt_mode())
        return j_integral(mass_, x, c_, quad_);
    // User mode: J = mu/m0, one power higher than the family quadrature.
    const double m0 = mass_.m0;
    return integrate_adaptive([&](double s) { return mass_at(mass_, s) / m0; }, c_, x,
                              quad_)
        .value;
}

double System::invert_j_from_anchor(double w) const {
    if (pt_mode())
        return j_integral_inverse(mass_, w, c_, quad_);
    const DomainInterval d = mass_domain(mass_);
    double lo = std::isfinite(d.lower) ? d.lower : c_ - 1.0;
    double hi = std::isfinite(d.upper) ? d.upper : c_ + 1.0;
    for (int i = 0; i < 200 && (j_from_anchor(lo) > w && lo > d.lower); ++i)
        lo = std::max(d.lower, lo - (hi - lo));
    for (int i = 0; i < 200 && (j_from_anchor(hi) < w && hi < d.upper); ++i)
        hi = std::min(d.upper, hi + (hi - lo));
    RootConfig rcfg;
    rcfg.f_tol = 1e-14;
    return solve_bracketed([&](double x) { return j_from_anchor(x) - w; },
                           [&](double x) { return j_factor(x); }, lo, hi, rcfg);
}

double System::u_of_x(double x) const {
    return u_scale_ * j_from_anchor(x);
}

double System::g(double x) const {
    require_in_domain(x, "g_value");
    const double u = u_of_x(x);
    return gamma_ == 1 ? std::sin(u) : std::sinh(u);
}

double System::f(double x) const {
    require_in_domain(x, "f_value");
    const double u = u_of_x(x);
    return gamma_ == 1 ? std::cos(u) : std::cosh(u);
}

double System::effective_potential(double x) const {
    require_in_domain(x, "effective_potential_value");
    if (pt_mode()) {
        if (epsilon_ == 0.0)
            return 0.0;
        const double fx = f(x);
        return epsilon_ / (fx * fx);
    }
    const double anchor_value = potential_.V(c_);
    return anchor_value +
           integrate_adaptive(
               [&](double s) { return j_factor(s) * potential_.dV(s); }, c_, x, quad_)
               .value;
}

double System::effective_potential_derivative(double x) const {
    require_in_domain(x, "effective_potential_value");
    if (pt_mode()) {
        if (epsilon_ == 0.0)
            return 0.0;
        const double fx = f(x);
        return 2.0 * gamma_ * epsilon_ * g(x) * u_scale_ * j_factor(x) / (fx * fx * fx);
    }
    return j_factor(x) * potential_.dV(x);
}

double System::potential(double x) const {
    require_in_domain(x, "potential");
    if (!pt_mode())
        return potential_.V(x);
    if (epsilon_ == 0.0)
        return 0.0;
    // V' = V_eff'/J collapses to 2 gamma epsilon a g/f^3, so V is recovered
    // from the anchor value V(c) = epsilon by one smooth quadrature.
    return epsilon_ +
           integrate_adaptive([&](double s) { return potential_derivative(s); }, c_, x,
                              quad_)
               .value;
}

double System::potential_derivative(double x) const {
    require_in_domain(x, "potential");
    if (!pt_mode())
        return potential_.dV(x);
    if (epsilon_ == 0.0)
        return 0.0;
    const double fx = f(x);
    return 2.0 * gamma_ * epsilon_ * g(x) * u_scale_ / (fx * fx * fx);
}

double sqrt_gamma_h(int gamma, double H) {
    const double gh = gamma * H;
    if (gh < 0.0) {
        std::ostringstream msg;
        msg << "sqrt(gamma*H) requires gamma*H >= 0 (principal branch); gamma = "
            << gamma << ", H = " << H << " violates gamma*H >= 0";
        throw RegimeError(msg.str());
    }
    return std::sqrt(gh);
}

} // namespace pdm
