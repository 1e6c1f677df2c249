#include "pdm/factorization.hpp"
#include "pdm/dynamics.hpp"
#include "pdm/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <vector>

namespace pdm {

namespace {

using cplx = std::complex<double>;

struct PointEval {
    cplx a_minus;
    cplx a_plus;
    double H;
};

/// Single-pass evaluation of A+-, reusing one u(x) computation for f, g and
/// the Poschl-Teller effective potential.
PointEval eval_ladder(const System& sys, double x, double pi) {
    sys.require_in_domain(x, "ladder_values");
    const double u = sys.u_of_x(x);
    const bool trig = sys.gamma() == 1;
    const double g = trig ? std::sin(u) : std::sinh(u);
    const double f = trig ? std::cos(u) : std::cosh(u);
    const double me = sys.effective_mass(x);
    double veff;
    if (sys.pt_mode())
        veff = sys.epsilon() == 0.0 ? 0.0 : sys.epsilon() / (f * f);
    else
        veff = sys.effective_potential(x);
    const double H = pi * pi / (2.0 * me) + veff;
    const double root = sqrt_gamma_h(sys.gamma(), H);
    const double k = f * pi / std::sqrt(2.0 * me);
    return {cplx(g * root, k), cplx(g * root, -k), H};
}

} // namespace

double g_value(const System& sys, double x) {
    return sys.g(x);
}

double f_value(const System& sys, double x) {
    return sys.f(x);
}

double pt_potential_value(const System& sys, double x) {
    sys.require_in_domain(x, "pt_potential_value");
    if (sys.epsilon() == 0.0)
        return 0.0;
    const double f = sys.f(x);
    return sys.epsilon() / (f * f);
}

LadderValue ladder_values(const System& sys, double x, double pi) {
    const PointEval e = eval_ladder(sys, x, pi);
    LadderValue v;
    v.a_plus = e.a_plus;
    v.a_minus = e.a_minus;
    v.conjugate_pair = true;
    return v;
}

std::pair<cplx, cplx> invariant_Q_values(const System& sys, double x, double pi,
                                         double t, double E) {
    const PointEval e = eval_ladder(sys, x, pi);
    const double omega = 2.0 * sys.alpha() * sqrt_gamma_h(sys.gamma(), E);
    const cplx rot = std::exp(cplx(0.0, -omega * t));
    return {e.a_plus * rot, e.a_minus * std::conj(rot)};
}

std::pair<cplx, cplx> q_polar(double E, double epsilon, double phi0, int gamma) {
    if (gamma != 1 && gamma != -1)
        throw ConfigError("q_polar: gamma must be +1 or -1");
    if (E - epsilon < 0.0) {
        std::ostringstream msg;
        msg << "q_polar: violated E - epsilon >= 0 (E = " << E
            << ", epsilon = " << epsilon << ")";
        throw RegimeError(msg.str());
    }
    if (gamma == 1 && !(epsilon > 0.0)) {
        std::ostringstream msg;
        msg << "q_polar: gamma=+1 requires E >= epsilon > 0; epsilon = " << epsilon
            << " violates epsilon > 0";
        throw RegimeError(msg.str());
    }
    if (gamma == -1 && std::abs(E) > std::abs(epsilon)) {
        std::ostringstream msg;
        msg << "q_polar: gamma=-1 requires |E| <= |epsilon|; |" << E << "| > |" << epsilon
            << "|";
        throw RegimeError(msg.str());
    }
    const double r = std::sqrt(E - epsilon);
    return {r * std::exp(cplx(0.0, phi0)), r * std::exp(cplx(0.0, -phi0))};
}

double poisson_bracket(const std::function<double(double, double)>& fa,
                       const std::function<double(double, double)>& fb,
                       double x, double pi, double step) {
    if (!(step > 0.0))
        throw ConfigError("poisson_bracket: step must be positive");
    const double hx = step * std::max(1.0, std::abs(x));
    const double hp = step * std::max(1.0, std::abs(pi));
    const double da_dx = (fa(x + hx, pi) - fa(x - hx, pi)) / (2.0 * hx);
    const double db_dx = (fb(x + hx, pi) - fb(x - hx, pi)) / (2.0 * hx);
    const double da_dp = (fa(x, pi + hp) - fa(x, pi - hp)) / (2.0 * hp);
    const double db_dp = (fb(x, pi + hp) - fb(x, pi - hp)) / (2.0 * hp);
    return da_dx * db_dp - da_dp * db_dx;
}

namespace {

struct FieldDerivs {
    cplx dam, dap;
    double dH;
};

FieldDerivs central(const System& sys, double x, double pi, double h, bool in_x) {
    const PointEval plus = in_x ? eval_ladder(sys, x + h, pi) : eval_ladder(sys, x, pi + h);
    const PointEval minus =
        in_x ? eval_ladder(sys, x - h, pi) : eval_ladder(sys, x, pi - h);
    const double inv = 1.0 / (2.0 * h);
    return {(plus.a_minus - minus.a_minus) * inv, (plus.a_plus - minus.a_plus) * inv,
            (plus.H - minus.H) * inv};
}

struct BracketResiduals {
    double r1;
    double r2;
};

BracketResiduals residuals_from(const FieldDerivs& dx, const FieldDerivs& dp,
                                const PointEval& center, double alpha, int gamma) {
    const cplx i(0.0, 1.0);
    const double root = std::sqrt(gamma * center.H);
    // {A-, A+} and {H, A+-} from the partial derivatives
    const cplx br_mm = dx.dam * dp.dap - dp.dam * dx.dap;
    const cplx br_hm = dx.dH * dp.dam - dp.dH * dx.dam;
    const cplx br_hp = dx.dH * dp.dap - dp.dH * dx.dap;
    const double r1 = std::abs(i * br_mm - 2.0 * alpha * root);
    const double r2m = std::abs(i * br_hm + 2.0 * alpha * root * center.a_minus);
    const double r2p = std::abs(i * br_hp - 2.0 * alpha * root * center.a_plus);
    return {r1, std::max(r2m, r2p)};
}

} // namespace

AlgebraReport verify_algebra(const System& sys, const AlgebraGrid& grid) {
    if (grid.n_x < 2 || grid.n_momentum < 2)
        throw ConfigError("verify_algebra: grid must have at least 2x2 points");
    if (!(grid.step > 0.0))
        throw ConfigError("verify_algebra: step must be positive");
    const double eps = sys.epsilon();
    const int gamma = sys.gamma();
    const double E = grid.region_energy;
    if (gamma == 1 && !(E > eps))
        throw ConfigError("verify_algebra: region energy must exceed epsilon");
    if (gamma == -1 && !(eps < E && E < 0.0))
        throw ConfigError("verify_algebra: region energy must satisfy epsilon < E < 0");

    // u-extent of the sub-level set V_eff < E, clamped to the domain.
    const double a = sys.u_scale();
    double u_t;
    if (eps == 0.0)
        u_t = std::numeric_limits<double>::infinity();
    else if (gamma == 1)
        u_t = std::acos(std::sqrt(eps / E));
    else
        u_t = std::acosh(std::sqrt(eps / E));

    const DomainInterval dom = sys.domain();
    const double c = sys.anchor();
    const auto practical_x = [&](bool upper_side) {
        const double bound = upper_side ? dom.upper : dom.lower;
        if (std::isfinite(bound))
            return bound - 0.02 * (bound - c);
        return c + (upper_side ? 128.0 : -128.0) * std::max(1.0, std::abs(c));
    };
    const double x_lo_end = practical_x(false);
    const double x_hi_end = practical_x(true);
    const double u_lo_end = sys.u_of_x(x_lo_end);
    const double u_hi_end = sys.u_of_x(x_hi_end);
    const double u_lo = std::max(-u_t, u_lo_end);
    const double u_hi = std::min(u_t, u_hi_end);
    if (!(u_lo < u_hi))
        throw ConfigError("verify_algebra: empty sampling region");

    AlgebraReport report;
    report.fd_step = grid.step;
    {
        std::ostringstream d;
        d << "sub-level V_eff < " << E << ", u in [" << u_lo << ", " << u_hi << "], "
          << grid.n_x << "x" << grid.n_momentum << " points, |s| <= 0.95";
        report.grid_description = d.str();
    }

    for (int ix = 0; ix < grid.n_x; ++ix) {
        const double u = u_lo + (u_hi - u_lo) * ix / (grid.n_x - 1);
        // A saturating mass profile can round u at the practical endpoint to
        // the exact reachable limit, whose preimage is at infinity; reuse the
        // endpoint coordinate instead of inverting.
        double x;
        if (ix == 0 && u == u_lo_end)
            x = x_lo_end;
        else if (ix == grid.n_x - 1 && u == u_hi_end)
            x = x_hi_end;
        else
            x = sys.invert_j_from_anchor(u / a);
        const double veff = sys.effective_potential(x);
        const double pi_max =
            std::sqrt(std::max(0.0, 2.0 * sys.effective_mass(x) * (E - veff)));
        for (int is = 0; is < grid.n_momentum; ++is) {
            const double s = -0.95 + 1.9 * is / (grid.n_momentum - 1);
            const double pi = s * pi_max;
            const PointEval center = eval_ladder(sys, x, pi);
            if (std::abs(gamma * center.H) < 1e-12) {
                ++report.skipped_points;
                continue;
            }
            ++report.grid_points;

            const cplx prod = center.a_plus * center.a_minus;
            report.max_factorization_residual =
                std::max(report.max_factorization_residual,
                         std::abs(prod + eps - center.H) / std::abs(center.H));

            const double hx = grid.step * std::max(1.0, std::abs(x));
            const double hp = grid.step * std::max(1.0, std::abs(pi));
            const FieldDerivs dx1 = central(sys, x, pi, hx, true);
            const FieldDerivs dx2 = central(sys, x, pi, 0.5 * hx, true);
            const FieldDerivs dp1 = central(sys, x, pi, hp, false);
            const FieldDerivs dp2 = central(sys, x, pi, 0.5 * hp, false);
            const auto richardson = [](const FieldDerivs& d1, const FieldDerivs& d2) {
                return FieldDerivs{(4.0 * d2.dam - d1.dam) / 3.0,
                                   (4.0 * d2.dap - d1.dap) / 3.0,
                                   (4.0 * d2.dH - d1.dH) / 3.0};
            };

            const BracketResiduals full =
                residuals_from(dx1, dp1, center, sys.alpha(), gamma);
            const BracketResiduals half =
                residuals_from(dx2, dp2, center, sys.alpha(), gamma);
            const BracketResiduals extr = residuals_from(
                richardson(dx1, dx2), richardson(dp1, dp2), center, sys.alpha(), gamma);

            report.max_bracket1_residual_step =
                std::max(report.max_bracket1_residual_step, full.r1);
            report.max_bracket2_residual_step =
                std::max(report.max_bracket2_residual_step, full.r2);
            report.max_bracket1_residual_half_step =
                std::max(report.max_bracket1_residual_half_step, half.r1);
            report.max_bracket2_residual_half_step =
                std::max(report.max_bracket2_residual_half_step, half.r2);
            report.max_bracket1_residual = std::max(report.max_bracket1_residual, extr.r1);
            report.max_bracket2_residual = std::max(report.max_bracket2_residual, extr.r2);
        }
    }

    if (report.max_bracket1_residual_half_step > 0.0)
        report.bracket1_convergence_ratio =
            report.max_bracket1_residual_step / report.max_bracket1_residual_half_step;
    if (report.max_bracket2_residual_half_step > 0.0)
        report.bracket2_convergence_ratio =
            report.max_bracket2_residual_step / report.max_bracket2_residual_half_step;
    return report;
}

} // namespace pdm
