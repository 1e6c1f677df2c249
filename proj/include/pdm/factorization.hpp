#pragma once

#include "pdm/system.hpp"

#include <complex>
#include <functional>
#include <string>
#include <utility>

namespace pdm {

/// Ladder-function pair at one phase-space point.
struct LadderValue {
    std::complex<double> a_plus;
    std::complex<double> a_minus;
    /// a_plus == conj(a_minus) holds for real (x, pi) with gamma*H >= 0.
    bool conjugate_pair = false;
};

/// Residual summary of the factorization identity and the two deformed
/// bracket relations over a phase-space grid. The factorization residual is
/// relative (scaled by |H|); bracket residuals are absolute, reported from
/// Richardson-extrapolated central differences, with the plain single-step
/// values kept for the order-2 convergence check.
struct AlgebraReport {
    double max_factorization_residual = 0.0;
    double max_bracket1_residual = 0.0;
    double max_bracket2_residual = 0.0;
    double max_bracket1_residual_step = 0.0;
    double max_bracket1_residual_half_step = 0.0;
    double max_bracket2_residual_step = 0.0;
    double max_bracket2_residual_half_step = 0.0;
    double bracket1_convergence_ratio = 0.0;
    double bracket2_convergence_ratio = 0.0;
    double fd_step = 0.0;
    std::string grid_description;
    int grid_points = 0;
    int skipped_points = 0;
};

/// Phase-space sampling region for verify_algebra: points are drawn from the
/// sub-level set V_eff(x) < region_energy (clamped to the validity domain)
/// with momenta pi = s * pi_max(x), |s| <= 0.95, which keeps gamma*H > 0 at
/// every sampled point for either sign.
struct AlgebraGrid {
    double region_energy;
    int n_x = 32;
    int n_momentum = 32;
    double step = 1e-3; ///< base finite-difference step (scaled per point)
};

/// g(x) = sin(u) (gamma=+1) or sinh(u) (gamma=-1), u = sqrt(2 m0 alpha^2) * int_c^x J.
double g_value(const System& sys, double x);

/// f(x) = cos(u) or cosh(u), positive branch.
double f_value(const System& sys, double x);

/// Poschl-Teller potential epsilon / f(x)^2.
double pt_potential_value(const System& sys, double x);

/// A_pm = -/+ i f pi / sqrt(2 m_eff) + g sqrt(gamma H), H = invariant_H_value.
/// Throws RegimeError when gamma*H < 0.
LadderValue ladder_values(const System& sys, double x, double pi);

/// Q_pm = exp(-/+ i 2 alpha sqrt(gamma E) t) * A_pm(x, pi).
std::pair<std::complex<double>, std::complex<double>>
invariant_Q_values(const System& sys, double x, double pi, double t, double E);

/// Polar constants q_pm = sqrt(E - epsilon) e^{+/- i phi0}. Enforces
/// E - epsilon >= 0; gamma=+1 requires E >= epsilon > 0; gamma=-1 requires
/// |E| <= |epsilon|. Violations raise RegimeError citing the inequality.
std::pair<std::complex<double>, std::complex<double>>
q_polar(double E, double epsilon, double phi0, int gamma);

/// Central-difference Poisson bracket {fa, fb} at (x, pi); steps are scaled
/// by max(1, |x|) and max(1, |pi|).
double poisson_bracket(const std::function<double(double, double)>& fa,
                       const std::function<double(double, double)>& fb,
                       double x, double pi, double step = 1e-6);

/// Evaluates the deformed-algebra residuals over the grid. Degenerate points
/// (gamma*H below 1e-12 in magnitude) are skipped and counted.
AlgebraReport verify_algebra(const System& sys, const AlgebraGrid& grid);

} // namespace pdm
