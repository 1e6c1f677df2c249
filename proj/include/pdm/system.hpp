#pragma once

#include "pdm/mass_models.hpp"
#include "pdm/quadrature.hpp"

#include <functional>
#include <memory>

namespace pdm {

/// Either the closed-form Poschl-Teller potential generated from
/// (gamma, alpha, epsilon, mass) — the factorization path — or a user
/// callable V(x) with analytic derivative.
struct PotentialSpec {
    enum class Kind { PoschlTeller, User };
    Kind kind = Kind::PoschlTeller;
    std::function<double(double)> V;  ///< User only
    std::function<double(double)> dV; ///< User only

    static PotentialSpec poschl_teller();
    static PotentialSpec user(std::function<double(double)> V,
                              std::function<double(double)> dV);
};

/// A complete dynamical system. Construction fixes how the mass family is
/// interpreted:
///   - Poschl-Teller potential: the family formula is the invariant-picture
///     effective mass, m_eff(x) = mu(x) and m(x) = sqrt(m0 mu(x)); the
///     potential and its quadratures then reproduce the closed forms of the
///     four families verbatim.
///   - User potential: the family formula is the Newton-picture mass,
///     m(x) = mu(x) and m_eff(x) = mu(x)^2/m0.
/// In both cases m_eff = m^2/m0 and J = sqrt(m_eff/m0) = m/m0, so every
/// cross-picture identity holds regardless of mode.
class System {
public:
    System(MassModel mass, PotentialSpec potential, int gamma, double alpha,
           double epsilon, double c = 0.0, QuadratureConfig quad = {});

    const MassModel& mass_model() const { return mass_; }
    bool pt_mode() const { return potential_.kind == PotentialSpec::Kind::PoschlTeller; }
    int gamma() const { return gamma_; }
    double alpha() const { return alpha_; }
    double epsilon() const { return epsilon_; }
    double anchor() const { return c_; }
    double m0() const { return mass_.m0; }
    const QuadratureConfig& quadrature() const { return quad_; }

    /// Validity interval of the potential (metadata flags follow the
    /// published sets; evaluators guard on the open interior).
    const DomainInterval& domain() const { return domain_; }
    /// Throws DomainError naming the offending bound unless x is interior.
    void require_in_domain(double x, const char* op) const;

    double newton_mass(double x) const;
    double newton_mass_derivative(double x) const;
    double effective_mass(double x) const;
    double effective_mass_derivative(double x) const;
    /// J = sqrt(m_eff/m0) = m/m0.
    double j_factor(double x) const;
    /// Signed quadrature integral_c^x J ds from the system anchor.
    double j_from_anchor(double x) const;
    /// Inverse of j_from_anchor.
    double invert_j_from_anchor(double w) const;
    /// u(x) = sqrt(2 m0 alpha^2) * integral_c^x J ds, the argument of the
    /// trigonometric/hyperbolic factorizing functions.
    double u_of_x(double x) const;
    /// sqrt(2 m0 alpha^2).
    double u_scale() const { return u_scale_; }

    /// g(x): sin(u) for gamma=+1, sinh(u) for gamma=-1.
    double g(double x) const;
    /// f(x): cos(u) for gamma=+1, cosh(u) for gamma=-1 (positive branch).
    double f(double x) const;

    double potential(double x) const;            ///< Newton-picture V(x)
    double potential_derivative(double x) const; ///< V'(x)
    double effective_potential(double x) const;  ///< V_eff, anchored V_eff(c)
    double effective_potential_derivative(double x) const;

private:
    MassModel mass_;
    PotentialSpec potential_;
    int gamma_;
    double alpha_;
    double epsilon_;
    double c_;
    QuadratureConfig quad_;
    double u_scale_;
    DomainInterval domain_;
};

/// sqrt(gamma * H) on the principal branch. Throws RegimeError citing the
/// violated inequality when gamma * H < 0.
double sqrt_gamma_h(int gamma, double H);

} // namespace pdm
