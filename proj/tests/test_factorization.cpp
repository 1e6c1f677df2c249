#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "pdm/dynamics.hpp"
#include "pdm/errors.hpp"
#include "pdm/factorization.hpp"
#include "pdm/system.hpp"

#include <cmath>
#include <complex>

using namespace pdm;

namespace {

System trig_well_system(MassModel model) {
    return System(std::move(model), PotentialSpec::poschl_teller(), +1, 0.5, 2.0);
}

System hyp_well_system(MassModel model) {
    return System(std::move(model), PotentialSpec::poschl_teller(), -1, 0.5, -2.0);
}

} // namespace

TEST_CASE("g and f values") {
    const System reg = trig_well_system(MassModel::regular(1.0, 1.0));
    CHECK(g_value(reg, 0.0) == 0.0);
    CHECK(f_value(reg, 0.0) == 1.0);

    // Near the clipped edge the trigonometric argument approaches pi/2.
    const double edge = reg.domain().upper;
    CHECK(g_value(reg, edge - 1e-9) == doctest::Approx(1.0).epsilon(1e-9));

    // Hyperbolic branch: sinh(sqrt(2 alpha^2 m0) * asinh(lambda x) / lambda).
    const System regm = hyp_well_system(MassModel::regular(1.0, 1.0));
    const double expect = std::sinh(std::sqrt(0.5) * std::asinh(1.0));
    CHECK(g_value(regm, 1.0) == doctest::Approx(expect).epsilon(1e-12));
    CHECK(g_value(regm, 1.0) == doctest::Approx(0.6643597).epsilon(1e-6));

    // f^2 + gamma g^2 = 1 on both branches.
    for (double x : {-0.6, -0.1, 0.2, 0.9}) {
        const double gp = g_value(reg, x), fp = f_value(reg, x);
        CHECK(fp * fp + gp * gp == doctest::Approx(1.0).epsilon(1e-13));
        const double gm = g_value(regm, x), fm = f_value(regm, x);
        CHECK(fm * fm - gm * gm == doctest::Approx(1.0).epsilon(1e-13));
        CHECK(fp > 0.0);
        CHECK(fm >= 1.0);
    }
}

TEST_CASE("Wronskian of the factorizing pair") {
    const System reg = trig_well_system(MassModel::regular(1.0, 1.0));
    const System expo = hyp_well_system(MassModel::exponential(0.5, -4.0));
    for (const System* sys : {&reg, &expo}) {
        for (double x : {-0.4, 0.1, 0.5}) {
            const double dg =
                oracles::derivative([&](double s) { return g_value(*sys, s); }, x, 1e-5);
            const double df =
                oracles::derivative([&](double s) { return f_value(*sys, s); }, x, 1e-5);
            const double W = f_value(*sys, x) * dg - g_value(*sys, x) * df;
            const double ratio = W / std::sqrt(2.0 * sys->effective_mass(x));
            CHECK(ratio == doctest::Approx(std::abs(sys->alpha())).epsilon(1e-8));
        }
    }
}

TEST_CASE("closed-form potential of the factorization") {
    const System reg = trig_well_system(MassModel::regular(1.0, 1.0));
    CHECK(pt_potential_value(reg, 0.0) == doctest::Approx(2.0).epsilon(1e-14));
    for (double x : {-0.7, 0.3, 1.4}) {
        const double f = f_value(reg, x);
        CHECK(pt_potential_value(reg, x) == doctest::Approx(2.0 / (f * f)).epsilon(1e-13));
        // This is exactly the effective potential of the invariant picture.
        CHECK(pt_potential_value(reg, x) ==
              doctest::Approx(effective_potential_value(reg, x)).epsilon(1e-12));
    }
}

TEST_CASE("ladder values at the anchor") {
    const System reg = trig_well_system(MassModel::regular(1.0, 1.0));
    const LadderValue lv = ladder_values(reg, 0.0, 1.0);
    // At x=c: f=1, g=0, m_eff=m0=1, so A+- = -/+ i pi / sqrt(2).
    CHECK(lv.a_plus.real() == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(lv.a_plus.imag() == doctest::Approx(-1.0 / std::sqrt(2.0)).epsilon(1e-13));
    CHECK(lv.a_minus.imag() == doctest::Approx(+1.0 / std::sqrt(2.0)).epsilon(1e-13));
    CHECK(lv.conjugate_pair);

    // Factorization identity A+ A- + eps = H at assorted points.
    for (double x : {-0.8, 0.2, 1.0}) {
        for (double pi : {-1.2, 0.4, 2.0}) {
            const LadderValue v = ladder_values(reg, x, pi);
            const std::complex<double> lhs = v.a_plus * v.a_minus + 2.0;
            const double H = invariant_H_value(reg, x, pi);
            CHECK(std::abs(lhs - H) < 1e-12 * std::abs(H));
        }
    }
}

TEST_CASE("ladder values respect the regime guard") {
    // gamma=-1 with H > 0 has no real sqrt(gamma H).
    const System regm = hyp_well_system(MassModel::regular(1.0, 1.0));
    CHECK_THROWS_AS(ladder_values(regm, 0.0, 10.0), RegimeError);
}

TEST_CASE("polar constants of the motion") {
    const auto [qp, qm] = q_polar(2.5, 2.0, 0.3, +1);
    CHECK(std::abs(qp) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-14));
    CHECK(std::arg(qp) == doctest::Approx(0.3).epsilon(1e-14));
    CHECK(std::arg(qm) == doctest::Approx(-0.3).epsilon(1e-14));
    CHECK(std::abs(qp) == doctest::Approx(0.7071067812).epsilon(1e-9));

    const auto [hp, hm] = q_polar(-1.0, -2.0, M_PI / 2.0, -1);
    CHECK(hp.real() == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(hp.imag() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(hm.imag() == doctest::Approx(-1.0).epsilon(1e-14));

    CHECK_THROWS_AS(q_polar(1.5, 2.0, 0.0, +1), RegimeError);
    CHECK_THROWS_AS(q_polar(-3.0, -2.0, 0.0, -1), RegimeError);
    CHECK_THROWS_AS(q_polar(2.5, -1.0, 0.0, +1), RegimeError);
}

TEST_CASE("numeric Poisson bracket recovers canonical pairs") {
    auto coord = [](double x, double) { return x; };
    auto mom = [](double, double pi) { return pi; };
    CHECK(poisson_bracket(coord, mom, 0.4, -1.1) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(poisson_bracket(mom, coord, 0.4, -1.1) == doctest::Approx(-1.0).epsilon(1e-9));
    CHECK(poisson_bracket(coord, coord, 0.4, -1.1) == doctest::Approx(0.0));
}

TEST_CASE("deformed algebra closes on benchmark grids") {
    AlgebraGrid grid;
    grid.region_energy = 2.75;
    grid.n_x = 16;
    grid.n_momentum = 16;

    SUBCASE("regular family, trigonometric branch") {
        const AlgebraReport rep =
            verify_algebra(trig_well_system(MassModel::regular(1.0, 1.0)), grid);
        CHECK(rep.max_factorization_residual < 1e-12);
        CHECK(rep.max_bracket1_residual < 1e-6);
        CHECK(rep.max_bracket2_residual < 1e-6);
        CHECK(rep.bracket1_convergence_ratio > 3.5);
        CHECK(rep.bracket2_convergence_ratio > 3.5);
        CHECK(rep.grid_points == 256);
    }

    SUBCASE("exponential family, hyperbolic branch") {
        const System sys(MassModel::exponential(0.5, -4.0),
                         PotentialSpec::poschl_teller(), -1, 1.0, -2.0);
        AlgebraGrid g2 = grid;
        g2.region_energy = -1.5;
        const AlgebraReport rep = verify_algebra(sys, g2);
        CHECK(rep.max_factorization_residual < 1e-12);
        CHECK(rep.max_bracket1_residual < 1e-6);
        CHECK(rep.max_bracket2_residual < 1e-6);
    }

    SUBCASE("constant-mass control") {
        const System sys(MassModel::constant(1.0), PotentialSpec::poschl_teller(),
                         +1, 0.5, 2.0);
        const AlgebraReport rep = verify_algebra(sys, grid);
        CHECK(rep.max_factorization_residual < 1e-12);
        CHECK(rep.max_bracket1_residual < 1e-6);
        CHECK(rep.max_bracket2_residual < 1e-6);
    }
}

TEST_CASE("Q invariants stay put along the flow") {
    const System reg = trig_well_system(MassModel::regular(1.0, 1.0));
    // A point on the E = 2.5 shell.
    const double x = 0.3;
    const double pi_max = std::sqrt(2.0 * reg.effective_mass(x) *
                                    (2.5 - effective_potential_value(reg, x)));
    const auto [Qp0, Qm0] = invariant_Q_values(reg, x, pi_max, 0.0, 2.5);
    CHECK(std::abs(Qp0 * Qm0 - (2.5 - 2.0)) < 1e-12);
    // |Q| equals sqrt(E - eps) independently of the phase-space point.
    CHECK(std::abs(Qp0) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));
}
