#pragma once

#include "pdm/system.hpp"

#include <functional>
#include <utility>

namespace pdm {

/// Newton-picture point transformation to constant-mass variables:
///   Q = integral_c^x sqrt(m(s)/m0) ds,   P = sqrt(m0/m(x)) p.
/// The transformed system keeps a reacting-thrust term, so only kinematic
/// relations are claimed for it (dQ/dt = P/m0).
std::pair<double, double> point_transform(const System& sys, double x, double p);

/// Invariant-picture transformation, which is thrust-free:
///   Qt = integral_c^x J(s) ds,   Pt = pi / J(x).
std::pair<double, double> tilde_transform(const System& sys, double x, double pi);

/// Standard constant-mass Hamiltonian K = P^2/(2 m0) + V(Q). A null V means
/// a free particle.
double constant_mass_K(double m0, double Q, double P,
                       const std::function<double(double)>& V = {});

/// The transformed effective potential in the tilde variables:
/// epsilon / cos^2(sqrt(2 alpha^2 m0) Qt) for gamma=+1 (cosh for gamma=-1).
double tilde_potential(const System& sys, double Qt);

/// K evaluated on tilde variables with the closed-form transformed potential.
double constant_mass_K_tilde(const System& sys, double Qt, double Pt);

/// Force on a constant-mass particle of mass m0 that traces the same path as
/// a variable-mass particle (mass m(x) = -m0 [1 - V0(x)/E0]) feeling F:
///   F0 = -(2 E0 / (m0 v^2)) F + 2 dV0/dx.
/// The map is singular at v = 0.
double lanczos_equivalent_force(double F, double v, double E0, double m0,
                                double dV0dx);

} // namespace pdm
