#pragma once

#include "pdm/quadrature.hpp"

namespace pdm {

/// Incomplete elliptic-type integral in the parameterization used throughout:
///   E_int(phi, beta) = integral_0^{sin(phi)} sqrt((1 - beta t^2)/(1 - t^2)) dt
/// evaluated after the substitution t = sin(u), i.e. as
///   integral_0^{phi} sqrt(1 - beta sin^2 u) du,
/// which removes the endpoint singularity and keeps all arithmetic real.
/// For beta <= 0 the integrand is smooth everywhere; for beta > 0 the range
/// must satisfy beta*sin^2(u) < 1 on [0, phi], otherwise a RegimeError is
/// thrown. Odd in phi. beta = 0 reduces to phi.
double elliptic_e_int(double phi, double beta, const QuadratureConfig& cfg = {});

} // namespace pdm
