#pragma once

#include "pdm/quadrature.hpp"

#include <functional>
#include <string>

namespace pdm {

enum class MassFamily { DoublySingular, Singular, Regular, Exponential, Custom };

/// Validity interval with per-end open/closed flags. Endpoint flags follow
/// the source set notation (a closed flag may sit on a bound where the mass
/// itself diverges; evaluation guards are strict-interior regardless).
struct DomainInterval {
    double lower;
    double upper;
    bool lower_closed = false;
    bool upper_closed = false;

    bool contains(double x) const;
    /// True strictly between the bounds, regardless of endpoint flags.
    bool interior_contains(double x) const;
    /// Distance from x to the nearest finite bound (+inf if unbounded).
    double boundary_distance(double x) const;
    std::string to_string() const;

    static DomainInterval whole_line();
};

/// One mass family instance. Evaluators are raw family-formula accessors;
/// how a dynamical system interprets the formula (Newton-picture mass vs
/// invariant-picture effective mass) is decided when the system is built.
struct MassModel {
    MassFamily family = MassFamily::Regular;
    double m0 = 1.0;     ///< reference mass, > 0
    double lambda = 1.0; ///< inverse length, > 0 (DoublySingular/Singular/Regular)
    double beta = -1.0;  ///< dimensionless, < 0 (DoublySingular)
    double kappa = -1.0; ///< inverse length, < 0 (Exponential)
    std::function<double(double)> custom_mass;            ///< Custom only
    std::function<double(double)> custom_mass_derivative; ///< Custom only
    DomainInterval custom_domain = DomainInterval::whole_line();

    /// m0(1 - beta (lambda x)^2) / (1 - (lambda x)^2) on (-1/lambda, 1/lambda)
    static MassModel doubly_singular(double m0, double lambda, double beta);
    /// m0 / (1 + lambda x)^2 on (-1/lambda, inf)
    static MassModel singular(double m0, double lambda);
    /// m0 / (1 + (lambda x)^2) on the whole line
    static MassModel regular(double m0, double lambda);
    /// m0 e^{kappa x / 2}, kappa < 0, on the whole line
    static MassModel exponential(double m0, double kappa);
    /// User-supplied mass with explicit analytic derivative and domain.
    static MassModel custom(double m0,
                            std::function<double(double)> mass,
                            std::function<double(double)> mass_derivative,
                            DomainInterval domain);
    /// Constant mass m0 (the trivial Custom instance).
    static MassModel constant(double m0);
};

/// Declared validity interval of the mass formula itself.
DomainInterval mass_domain(const MassModel& model);

/// m(x) per the family formula. Throws DomainError outside the declared
/// domain, naming the offending bound.
double mass_at(const MassModel& model, double x);

/// Analytic m'(x). Same domain rules as mass_at.
double mass_derivative_at(const MassModel& model, double x);

/// m(x)^2 / m0.
double effective_mass_at(const MassModel& model, double x);

/// Signed quadrature integral_c^x sqrt(m(s)/m0) ds. Closed forms for
/// Singular/Regular/Exponential; adaptive quadrature of the elliptic
/// integrand for DoublySingular; adaptive quadrature for Custom.
double j_integral(const MassModel& model, double x, double c,
                  const QuadratureConfig& quad = {});

/// Inverse of j_integral in x: the unique x with j_integral(model, x, c) = w.
/// Closed forms where available, otherwise a bracketed solve. Throws
/// DomainError when w lies beyond the reachable range.
double j_integral_inverse(const MassModel& model, double w, double c,
                          const QuadratureConfig& quad = {});

/// Maximal interval on which the Poschl-Teller potential of the given sign
/// is finite, anchored at c = 0. For gamma = +1 solves
/// |sqrt(2 m0 alpha^2) * integral_0^x J| < pi/2; for gamma = -1 returns the
/// published unrestricted set of the family. epsilon does not affect the
/// interval; it is part of the signature for symmetry with the system ops.
DomainInterval domain_of(const MassModel& model, int gamma, double alpha,
                         double epsilon);

/// Same solve for a general quadrature anchor (used by systems with c != 0).
DomainInterval domain_for_anchor(const MassModel& model, int gamma, double alpha,
                                 double c);

} // namespace pdm
