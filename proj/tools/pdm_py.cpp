#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "pdm/dynamics.hpp"
#include "pdm/elliptic.hpp"
#include "pdm/errors.hpp"
#include "pdm/factorization.hpp"
#include "pdm/integrator.hpp"
#include "pdm/trajectories.hpp"
#include "pdm/transforms.hpp"

#include <string>
#include <tuple>
#include <vector>

namespace py = pybind11;
using namespace pybind11::literals;
using namespace pdm;

namespace {

MassModel model_from(const std::string& family, double m0, double lambda,
                     double beta, double kappa) {
    if (family == "doubly_singular")
        return MassModel::doubly_singular(m0, lambda, beta);
    if (family == "singular") return MassModel::singular(m0, lambda);
    if (family == "regular") return MassModel::regular(m0, lambda);
    if (family == "exponential") return MassModel::exponential(m0, kappa);
    if (family == "constant") return MassModel::constant(m0);
    throw ConfigError("unknown mass family '" + family + "'");
}

System make_system(const std::string& family, int gamma, double alpha,
                   double epsilon, double m0, double lambda, double beta,
                   double kappa) {
    return System(model_from(family, m0, lambda, beta, kappa),
                  PotentialSpec::poschl_teller(), gamma, alpha, epsilon);
}

/// One trajectory row: (t, x, v, p, pi, H_script, H_inv, Qabs2).
using Row =
    std::tuple<double, double, double, double, double, double, double, double>;

std::vector<Row> rows_of(const Trajectory& traj) {
    std::vector<Row> rows;
    rows.reserve(traj.samples.size());
    for (const TrajectorySample& s : traj.samples)
        rows.emplace_back(s.state.t, s.state.x, s.state.v, s.state.p,
                          s.state.pi, s.H_script, s.H_inv, s.Qabs2);
    return rows;
}

} // namespace

PYBIND11_MODULE(pdmcore, m) {
    m.doc() = "position-dependent-mass dynamics: closed-form trajectories, "
              "numeric integration and factorization-algebra checks";

    py::register_exception<ConfigError>(m, "ConfigError");
    py::register_exception<DomainError>(m, "DomainError");
    py::register_exception<RegimeError>(m, "RegimeError");
    py::register_exception<NumericalError>(m, "NumericalError");

    py::class_<System>(m, "System")
        .def_property_readonly("gamma", &System::gamma)
        .def_property_readonly("alpha", &System::alpha)
        .def_property_readonly("epsilon", &System::epsilon)
        .def_property_readonly("m0", &System::m0)
        .def("domain",
             [](const System& s) {
                 return std::make_pair(s.domain().lower, s.domain().upper);
             })
        .def("mass", &System::newton_mass, "x"_a)
        .def("mass_derivative", &System::newton_mass_derivative, "x"_a)
        .def("effective_mass", &System::effective_mass, "x"_a)
        .def("potential", &System::potential, "x"_a)
        .def("effective_potential", &System::effective_potential, "x"_a)
        .def("g", &System::g, "x"_a)
        .def("f", &System::f, "x"_a)
        .def("j_from_anchor", &System::j_from_anchor, "x"_a);

    m.def("make_system", &make_system, "family"_a, "gamma"_a, "alpha"_a,
          "epsilon"_a, "m0"_a = 1.0, "lam"_a = 1.0, "beta"_a = -1.0,
          "kappa"_a = -1.0,
          "Build a Poschl-Teller system for a named mass family "
          "(doubly_singular, singular, regular, exponential, constant).");

    m.def(
        "hamiltonian_script",
        [](const System& s, double x, double p) {
            return hamiltonian_script_value(s, x, p);
        },
        "sys"_a, "x"_a, "p"_a, "Dissipative Newton-picture H = p^2/2m + V.");
    m.def(
        "invariant_H",
        [](const System& s, double x, double pi) {
            return invariant_H_value(s, x, pi);
        },
        "sys"_a, "x"_a, "pi"_a, "Conserved H = pi^2/(2 m_eff) + V_eff.");
    m.def(
        "ladder",
        [](const System& s, double x, double pi) {
            const LadderValue lv = ladder_values(s, x, pi);
            return std::make_pair(lv.a_plus, lv.a_minus);
        },
        "sys"_a, "x"_a, "pi"_a,
        "Factorizing pair (A+, A-) with A+ A- + epsilon = H.");

    m.def("oscillation_period", &oscillation_period, "sys"_a, "E"_a);
    m.def(
        "analytic_trajectory",
        [](const System& s, double E, double phi0, double t0, double t1, int n) {
            return rows_of(sample_trajectory(TrajectorySpec(s, E, phi0), t0, t1, n));
        },
        "sys"_a, "E"_a, "phi0"_a = 0.0, "t0"_a = 0.0, "t1"_a, "n"_a = 500,
        "Closed-form trajectory rows (t, x, v, p, pi, H_script, H_inv, "
        "|Q|^2).");
    m.def(
        "simulate",
        [](const System& s, const std::string& picture, double x0, double v0,
           double t0, double t1, int n) {
            return rows_of(integrate_picture(s, picture_from_name(picture), x0,
                                             v0, t0, t1, n));
        },
        "sys"_a, "picture"_a, "x0"_a, "v0"_a, "t0"_a = 0.0, "t1"_a,
        "n"_a = 500,
        "Adaptive numeric integration of one picture (newton, canonical or "
        "invariant); same row layout as analytic_trajectory.");

    m.def(
        "verify_algebra",
        [](const System& s, double region_energy, int n_x, int n_momentum) {
            AlgebraGrid grid;
            grid.region_energy = region_energy;
            grid.n_x = n_x;
            grid.n_momentum = n_momentum;
            const AlgebraReport rep = verify_algebra(s, grid);
            py::dict d;
            d["max_factorization_residual"] = rep.max_factorization_residual;
            d["max_bracket1_residual"] = rep.max_bracket1_residual;
            d["max_bracket2_residual"] = rep.max_bracket2_residual;
            d["bracket1_convergence_ratio"] = rep.bracket1_convergence_ratio;
            d["bracket2_convergence_ratio"] = rep.bracket2_convergence_ratio;
            d["grid_points"] = rep.grid_points;
            d["skipped_points"] = rep.skipped_points;
            return d;
        },
        "sys"_a, "region_energy"_a, "n_x"_a = 32, "n_momentum"_a = 32,
        "Factorization and bracket-closure residuals over a phase-space "
        "grid.");

    m.def(
        "point_transform",
        [](const System& s, double x, double p) {
            return point_transform(s, x, p);
        },
        "sys"_a, "x"_a, "p"_a);
    m.def(
        "tilde_transform",
        [](const System& s, double x, double pi) {
            return tilde_transform(s, x, pi);
        },
        "sys"_a, "x"_a, "pi"_a);

    m.def(
        "elliptic_e_int",
        [](double phi, double beta) { return elliptic_e_int(phi, beta); },
        "phi"_a, "beta"_a,
        "Incomplete elliptic integral of the second kind, "
        "integral_0^phi sqrt(1 - beta sin^2 u) du.");
}
