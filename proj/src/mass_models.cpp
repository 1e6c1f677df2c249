#include "pdm/mass_models.hpp"
#include "pdm/elliptic.hpp"
#include "pdm/errors.hpp"
#include "pdm/roots.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <utility>

namespace pdm {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

[[noreturn]] void throw_out_of_domain(const char* op, double x, const DomainInterval& d) {
    const bool below = x < d.lower || (x == d.lower && !d.lower_closed);
    std::ostringstream msg;
    msg << op << ": x = " << x << " is outside the declared domain " << d.to_string()
        << "; offending bound: " << (below ? d.lower : d.upper)
        << (below ? " (lower)" : " (upper)");
    throw DomainError(msg.str());
}

void require_in(const char* op, const MassModel& model, double x) {
    const DomainInterval d = mass_domain(model);
    if (!d.contains(x))
        throw_out_of_domain(op, x, d);
}

/// Closure of the declared domain: j_integral tolerates evaluation at an
/// open endpoint whenever the integral converges there.
void require_in_closure(const char* op, const MassModel& model, double x) {
    const DomainInterval d = mass_domain(model);
    if (x < d.lower || x > d.upper)
        throw_out_of_domain(op, x, d);
}

double sqrt_2am0(double alpha, double m0) {
    return std::sqrt(2.0 * alpha * alpha * m0);
}

} // namespace

bool DomainInterval::contains(double x) const {
    if (x < lower || (x == lower && !lower_closed))
        return false;
    if (x > upper || (x == upper && !upper_closed))
        return false;
    return true;
}

bool DomainInterval::interior_contains(double x) const {
    return x > lower && x < upper;
}

double DomainInterval::boundary_distance(double x) const {
    double d = kInf;
    if (std::isfinite(lower))
        d = std::min(d, std::abs(x - lower));
    if (std::isfinite(upper))
        d = std::min(d, std::abs(x - upper));
    return d;
}

std::string DomainInterval::to_string() const {
    std::ostringstream s;
    s << (lower_closed ? '[' : '(');
    if (lower == -kInf)
        s << "-inf";
    else
        s << lower;
    s << ", ";
    if (upper == kInf)
        s << "inf";
    else
        s << upper;
    s << (upper_closed ? ']' : ')');
    return s.str();
}

DomainInterval DomainInterval::whole_line() {
    return {-kInf, kInf, false, false};
}

MassModel MassModel::doubly_singular(double m0, double lambda, double beta) {
    if (!(m0 > 0.0))
        throw ConfigError("doubly_singular: m0 must be > 0");
    if (!(lambda > 0.0))
        throw ConfigError("doubly_singular: lambda must be > 0");
    if (!(beta < 0.0))
        throw ConfigError("doubly_singular: beta must be < 0");
    MassModel m;
    m.family = MassFamily::DoublySingular;
    m.m0 = m0;
    m.lambda = lambda;
    m.beta = beta;
    return m;
}

MassModel MassModel::singular(double m0, double lambda) {
    if (!(m0 > 0.0))
        throw ConfigError("singular: m0 must be > 0");
    if (!(lambda > 0.0))
        throw ConfigError("singular: lambda must be > 0");
    MassModel m;
    m.family = MassFamily::Singular;
    m.m0 = m0;
    m.lambda = lambda;
    return m;
}

MassModel MassModel::regular(double m0, double lambda) {
    if (!(m0 > 0.0))
        throw ConfigError("regular: m0 must be > 0");
    if (!(lambda > 0.0))
        throw ConfigError("regular: lambda must be > 0");
    MassModel m;
    m.family = MassFamily::Regular;
    m.m0 = m0;
    m.lambda = lambda;
    return m;
}

MassModel MassModel::exponential(double m0, double kappa) {
    if (!(m0 > 0.0))
        throw ConfigError("exponential: m0 must be > 0");
    if (!(kappa < 0.0))
        throw ConfigError("exponential: kappa must be < 0");
    MassModel m;
    m.family = MassFamily::Exponential;
    m.m0 = m0;
    m.kappa = kappa;
    return m;
}

MassModel MassModel::custom(double m0,
                            std::function<double(double)> mass,
                            std::function<double(double)> mass_derivative,
                            DomainInterval domain) {
    if (!(m0 > 0.0))
        throw ConfigError("custom: m0 must be > 0");
    if (!mass || !mass_derivative)
        throw ConfigError("custom: mass and analytic derivative callables are both required");
    if (!(domain.lower < domain.upper))
        throw ConfigError("custom: domain lower bound must be below upper bound");
    MassModel m;
    m.family = MassFamily::Custom;
    m.m0 = m0;
    m.custom_mass = std::move(mass);
    m.custom_mass_derivative = std::move(mass_derivative);
    m.custom_domain = domain;
    return m;
}

MassModel MassModel::constant(double m0) {
    return custom(
        m0, [m0](double) { return m0; }, [](double) { return 0.0; },
        DomainInterval::whole_line());
}

DomainInterval mass_domain(const MassModel& model) {
    switch (model.family) {
    case MassFamily::DoublySingular:
        return {-1.0 / model.lambda, 1.0 / model.lambda, false, false};
    case MassFamily::Singular:
        return {-1.0 / model.lambda, kInf, false, false};
    case MassFamily::Regular:
    case MassFamily::Exponential:
        return DomainInterval::whole_line();
    case MassFamily::Custom:
        return model.custom_domain;
    }
    throw ConfigError("mass_domain: unknown family");
}

double mass_at(const MassModel& model, double x) {
    require_in("mass_at", model, x);
    switch (model.family) {
    case MassFamily::DoublySingular: {
        const double s2 = model.lambda * x * model.lambda * x;
        return model.m0 * (1.0 - model.beta * s2) / (1.0 - s2);
    }
    case MassFamily::Singular: {
        const double d = 1.0 + model.lambda * x;
        return model.m0 / (d * d);
    }
    case MassFamily::Regular:
        return model.m0 / (1.0 + model.lambda * x * model.lambda * x);
    case MassFamily::Exponential:
        return model.m0 * std::exp(0.5 * model.kappa * x);
    case MassFamily::Custom: {
        const double m = model.custom_mass(x);
        if (!(m > 0.0)) {
            std::ostringstream msg;
            msg << "mass_at: custom mass is non-positive (" << m << ") at x = " << x;
            throw DomainError(msg.str());
        }
        return m;
    }
    }
    throw ConfigError("mass_at: unknown family");
}

double mass_derivative_at(const MassModel& model, double x) {
    require_in("mass_derivative_at", model, x);
    switch (model.family) {
    case MassFamily::DoublySingular: {
        const double s2 = model.lambda * x * model.lambda * x;
        const double den = 1.0 - s2;
        return 2.0 * model.m0 * model.lambda * model.lambda * x * (1.0 - model.beta) /
               (den * den);
    }
    case MassFamily::Singular: {
        const double d = 1.0 + model.lambda * x;
        return -2.0 * model.lambda * model.m0 / (d * d * d);
    }
    case MassFamily::Regular: {
        const double d = 1.0 + model.lambda * x * model.lambda * x;
        return -2.0 * model.m0 * model.lambda * model.lambda * x / (d * d);
    }
    case MassFamily::Exponential:
        return 0.5 * model.kappa * model.m0 * std::exp(0.5 * model.kappa * x);
    case MassFamily::Custom:
        return model.custom_mass_derivative(x);
    }
    throw ConfigError("mass_derivative_at: unknown family");
}

double effective_mass_at(const MassModel& model, double x) {
    const double m = mass_at(model, x);
    return m * m / model.m0;
}

double j_integral(const MassModel& model, double x, double c,
                  const QuadratureConfig& quad) {
    require_in_closure("j_integral", model, x);
    require_in_closure("j_integral", model, c);
    const double lam = model.lambda;
    switch (model.family) {
    case MassFamily::DoublySingular:
        return (elliptic_e_int(std::asin(lam * x), model.beta, quad) -
                elliptic_e_int(std::asin(lam * c), model.beta, quad)) /
               lam;
    case MassFamily::Singular:
        return (std::log1p(lam * x) - std::log1p(lam * c)) / lam;
    case MassFamily::Regular:
        return (std::asinh(lam * x) - std::asinh(lam * c)) / lam;
    case MassFamily::Exponential:
        return (4.0 / model.kappa) *
               (std::exp(0.25 * model.kappa * x) - std::exp(0.25 * model.kappa * c));
    case MassFamily::Custom: {
        const double m0 = model.m0;
        return integrate_adaptive(
                   [&](double s) { return std::sqrt(model.custom_mass(s) / m0); }, c, x,
                   quad)
            .value;
    }
    }
    throw ConfigError("j_integral: unknown family");
}

double j_integral_inverse(const MassModel& model, double w, double c,
                          const QuadratureConfig& quad) {
    require_in_closure("j_integral_inverse", model, c);
    const double lam = model.lambda;
    switch (model.family) {
    case MassFamily::Singular:
        return ((1.0 + lam * c) * std::exp(lam * w) - 1.0) / lam;
    case MassFamily::Regular:
        return std::sinh(lam * w + std::asinh(lam * c)) / lam;
    case MassFamily::Exponential: {
        const double arg = std::exp(0.25 * model.kappa * c) + 0.25 * model.kappa * w;
        if (!(arg > 0.0)) {
            std::ostringstream msg;
            msg << "j_integral_inverse: quadrature value " << w
                << " exceeds the reachable range of the Exponential family (limit "
                << -4.0 / model.kappa * std::exp(0.25 * model.kappa * c) << ")";
            throw DomainError(msg.str());
        }
        return (4.0 / model.kappa) * std::log(arg);
    }
    case MassFamily::DoublySingular:
    case MassFamily::Custom: {
        const DomainInterval d = mass_domain(model);
        double lo = d.lower;
        double hi = d.upper;
        if (model.family == MassFamily::Custom) {
            // Expand a finite bracket around c for unbounded custom domains.
            double step = std::max(1.0, std::abs(c));
            lo = std::isfinite(lo) ? lo : c - step;
            hi = std::isfinite(hi) ? hi : c + step;
            for (int i = 0; i < 200; ++i) {
                const bool lo_ok = j_integral(model, lo, c, quad) <= w || lo == d.lower;
                const bool hi_ok = j_integral(model, hi, c, quad) >= w || hi == d.upper;
                if (lo_ok && hi_ok)
                    break;
                step *= 2.0;
                if (!lo_ok)
                    lo = std::max(d.lower, lo - step);
                if (!hi_ok)
                    hi = std::min(d.upper, hi + step);
            }
        }
        const double f_lo = j_integral(model, lo, c, quad) - w;
        const double f_hi = j_integral(model, hi, c, quad) - w;
        if (f_lo > 0.0 || f_hi < 0.0) {
            std::ostringstream msg;
            msg << "j_integral_inverse: quadrature value " << w
                << " is outside the reachable range [" << f_lo + w << ", " << f_hi + w
                << "]";
            throw DomainError(msg.str());
        }
        RootConfig rcfg;
        rcfg.f_tol = 1e-14;
        return solve_bracketed(
            [&](double x) { return j_integral(model, x, c, quad) - w; },
            [&](double x) { return std::sqrt(mass_at(model, x) / model.m0); }, lo, hi,
            rcfg);
    }
    }
    throw ConfigError("j_integral_inverse: unknown family");
}

DomainInterval domain_for_anchor(const MassModel& model, int gamma, double alpha,
                                 double c) {
    if (gamma != 1 && gamma != -1)
        throw ConfigError("domain_for_anchor: gamma must be +1 or -1");
    if (alpha == 0.0)
        throw ConfigError("domain_for_anchor: alpha must be nonzero");

    DomainInterval base = mass_domain(model);
    if (model.family == MassFamily::Singular)
        base.lower_closed = true; // potential stays finite at the mass singularity
    if (gamma == -1)
        return base;

    const double w_max = std::numbers::pi / (2.0 * sqrt_2am0(alpha, model.m0));
    DomainInterval clipped = base;
    const bool clip_closed = (model.family == MassFamily::Exponential);
    try {
        const double hi = j_integral_inverse(model, w_max, c);
        if (hi < base.upper) {
            clipped.upper = hi;
            clipped.upper_closed = clip_closed;
        }
    } catch (const DomainError&) {
        // quadrature never reaches pi/2 on this side; keep the family bound
    }
    try {
        const double lo = j_integral_inverse(model, -w_max, c);
        if (lo > base.lower) {
            clipped.lower = lo;
            clipped.lower_closed = clip_closed;
        }
    } catch (const DomainError&) {
    }
    return clipped;
}

DomainInterval domain_of(const MassModel& model, int gamma, double alpha,
                         double /*epsilon*/) {
    return domain_for_anchor(model, gamma, alpha, 0.0);
}

} // namespace pdm
