#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pdm/csv.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#ifndef _WIN32
#include <sys/wait.h>
#include <unistd.h>
#endif

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

/// Exit code of a shell command (the pdm binary path comes in via PDM_BIN).
int run(const std::string& args) {
    const std::string cmd = std::string(PDM_BIN) + " " + args;
    const int status = std::system(cmd.c_str());
#ifdef _WIN32
    return status;
#else
    if (WIFEXITED(status)) return WEXITSTATUS(status);
    return -1;
#endif
}

const fs::path& work_dir() {
    static const fs::path dir = [] {
        fs::path p = fs::temp_directory_path() /
                     ("pdm_cli_tests_" + std::to_string(::getpid()));
        fs::create_directories(p);
        return p;
    }();
    return dir;
}

fs::path write_file(const std::string& name, const std::string& text) {
    const fs::path p = work_dir() / name;
    std::ofstream out(p, std::ios::binary);
    out << text;
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::string q(const fs::path& p) { return "\"" + p.string() + "\""; }

const char* kTrigWellRegular = R"({
  "mass": {"family": "regular", "m0": 1.0, "lambda": 1.0},
  "system": {"gamma": 1, "alpha": 0.5, "epsilon": 2.0},
  "trajectory": {"E": 2.5, "phi0": 0.0, "periods": 1.0, "samples": 9}
})";

} // namespace

TEST_CASE("analytic: CSV output, determinism and stdout mode") {
    const fs::path cfg = write_file("trig_well_regular.json", kTrigWellRegular);
    const fs::path out1 = work_dir() / "analytic1.csv";
    const fs::path out2 = work_dir() / "analytic2.csv";
    REQUIRE(run("analytic --config " + q(cfg) + " --output " + q(out1)) == 0);
    REQUIRE(run("analytic --config " + q(cfg) + " --output " + q(out2)) == 0);

    const std::string body = slurp(out1);
    CHECK(body == slurp(out2)); // byte-identical across runs
    CHECK(body.rfind("t,x,v,p,pi,H_script,H_inv,Qabs2\n", 0) == 0);

    // stdout mode produces the same bytes.
    const fs::path out3 = work_dir() / "analytic3.csv";
    REQUIRE(run("analytic --config " + q(cfg) + " > " + q(out3)) == 0);
    CHECK(body == slurp(out3));

    // Parse and spot-check the closed-form start: turning point at phi0=0.
    std::istringstream in(body);
    const pdm::Trajectory traj = pdm::read_trajectory_csv(in);
    REQUIRE(traj.samples.size() == 9);
    CHECK(traj.samples.front().state.x ==
          doctest::Approx(0.7037020).epsilon(1e-6));
    CHECK(std::abs(traj.samples.front().state.pi) < 1e-12);
    for (const pdm::TrajectorySample& s : traj.samples) {
        CHECK(s.H_inv == doctest::Approx(2.5).epsilon(1e-9));
        CHECK(s.Qabs2 == doctest::Approx(0.5).epsilon(1e-8));
    }

    // Serializing the parsed trajectory reproduces the file byte-for-byte.
    std::ostringstream rt;
    pdm::write_trajectory_csv(rt, traj);
    CHECK(rt.str() == body);
}

TEST_CASE("analytic: fixed point when E equals the well bottom") {
    const fs::path cfg = write_file("fixed_point.json", R"({
      "mass": {"family": "regular", "m0": 1.0, "lambda": 1.0},
      "system": {"gamma": 1, "alpha": 0.5, "epsilon": 2.0},
      "trajectory": {"E": 2.0, "t1": 3.0, "samples": 5}
    })");
    const fs::path out = work_dir() / "fixed_point.csv";
    REQUIRE(run("analytic --config " + q(cfg) + " --output " + q(out)) == 0);
    std::istringstream in(slurp(out));
    const pdm::Trajectory traj = pdm::read_trajectory_csv(in);
    REQUIRE(traj.samples.size() == 5);
    for (const pdm::TrajectorySample& s : traj.samples) {
        CHECK(std::abs(s.state.x) < 1e-14);
        CHECK(std::abs(s.state.pi) < 1e-14);
    }
}

TEST_CASE("config and regime failures map to distinct exit codes") {
    const fs::path out = work_dir() / "ignored.csv";

    // Unknown top-level key.
    const fs::path bad1 = write_file("bad_root_key.json", R"({
      "mass": {"family": "regular", "m0": 1.0, "lambda": 1.0},
      "system": {"gamma": 1, "alpha": 0.5, "epsilon": 2.0},
      "surprise": true
    })");
    CHECK(run("analytic --config " + q(bad1) + " --output " + q(out)) == 2);

    // Family/parameter mismatch.
    const fs::path bad2 = write_file("bad_family_key.json", R"({
      "mass": {"family": "regular", "m0": 1.0, "lambda": 1.0, "kappa": -2.0},
      "system": {"gamma": 1, "alpha": 0.5, "epsilon": 2.0},
      "trajectory": {"E": 2.5, "periods": 1.0}
    })");
    CHECK(run("analytic --config " + q(bad2) + " --output " + q(out)) == 2);

    // Not JSON at all.
    const fs::path bad3 = write_file("bad_json.json", "not json {");
    CHECK(run("analytic --config " + q(bad3) + " --output " + q(out)) == 2);

    // Missing file.
    CHECK(run("analytic --config " + q(work_dir() / "nope.json") + " --output " +
              q(out)) == 2);

    // Missing window.
    const fs::path bad4 = write_file("no_window.json", R"({
      "mass": {"family": "regular", "m0": 1.0, "lambda": 1.0},
      "system": {"gamma": 1, "alpha": 0.5, "epsilon": 2.0},
      "trajectory": {"E": 2.5}
    })");
    CHECK(run("analytic --config " + q(bad4) + " --output " + q(out)) == 2);

    // Sign mismatch between gamma and epsilon is a construction error.
    const fs::path bad5 = write_file("sign_mismatch.json", R"({
      "mass": {"family": "regular", "m0": 1.0, "lambda": 1.0},
      "system": {"gamma": 1, "alpha": 0.5, "epsilon": -2.0},
      "trajectory": {"E": 2.5, "periods": 1.0}
    })");
    CHECK(run("analytic --config " + q(bad5) + " --output " + q(out)) == 2);

    // simulate without --output.
    const fs::path okc = write_file("ok.json", kTrigWellRegular);
    CHECK(run("simulate --config " + q(okc)) == 2);

    // Below-well energy: a regime failure, not a config one.
    const fs::path reg1 = write_file("below_well.json", R"({
      "mass": {"family": "regular", "m0": 1.0, "lambda": 1.0},
      "system": {"gamma": 1, "alpha": 0.5, "epsilon": 2.0},
      "trajectory": {"E": 1.0, "periods": 1.0}
    })");
    CHECK(run("analytic --config " + q(reg1) + " --output " + q(out)) == 3);

    // gamma=-1 with |E| beyond |epsilon|.
    const fs::path reg2 = write_file("beyond_depth.json", R"({
      "mass": {"family": "regular", "m0": 1.0, "lambda": 1.0},
      "system": {"gamma": -1, "alpha": 0.5, "epsilon": -2.0},
      "trajectory": {"E": -3.0, "periods": 1.0}
    })");
    CHECK(run("analytic --config " + q(reg2) + " --output " + q(out)) == 3);

    // CLI-level misuse.
    CHECK(run("") == 2);
    CHECK(run("analytic") == 2);
    CHECK(run("frobnicate --config x.json") == 2);
    CHECK(run("--help > /dev/null") == 0);
}

TEST_CASE("compare: analytic vs numeric stays under the bound") {
    struct Case { const char* name; std::string body; };
    const Case cases[] = {
        {"cmp_regular.json", R"({
          "mass": {"family": "regular", "m0": 1.0, "lambda": 1.0},
          "system": {"gamma": 1, "alpha": 0.5, "epsilon": 2.0},
          "trajectory": {"E": 2.5, "phi0": 0.0, "samples": 101}
        })"},
        {"cmp_ds.json", R"({
          "mass": {"family": "doubly_singular", "m0": 1.0, "lambda": 1.0, "beta": -1.0},
          "system": {"gamma": -1, "alpha": 0.5, "epsilon": -2.0},
          "trajectory": {"E": -1.0, "phi0": 0.4, "samples": 101}
        })"},
        {"cmp_exponential.json", R"({
          "mass": {"family": "exponential", "m0": 0.5, "kappa": -2.0},
          "system": {"gamma": 1, "alpha": 1.0, "epsilon": 2.0},
          "trajectory": {"E": 4.0, "phi0": 0.0, "samples": 101},
          "integrator": {"method": "rk45", "rel_tol": 1e-11}
        })"},
    };
    for (const Case& c : cases) {
        CAPTURE(c.name);
        const fs::path cfg = write_file(c.name, c.body);
        const fs::path out = work_dir() / (std::string(c.name) + ".report.json");
        CHECK(run("compare --config " + q(cfg) + " --output " + q(out)) == 0);
        const json rep = json::parse(slurp(out));
        CHECK(rep.at("pass").get<bool>());
        CHECK(rep.at("max_abs_dx").get<double>() < 1e-6);
        CHECK(rep.at("max_abs_dpi").get<double>() < 1e-6);
        CHECK(rep.at("domain_exit").get<bool>() == false);
        CHECK(rep.at("samples").get<int>() == 101);
    }

    // An impossible threshold flips the exit code and the pass flag.
    const fs::path cfg = write_file("cmp_strict.json", kTrigWellRegular);
    const fs::path out = work_dir() / "cmp_strict.report.json";
    CHECK(run("compare --config " + q(cfg) + " --output " + q(out) +
              " --threshold 1e-18") == 1);
    const json rep = json::parse(slurp(out));
    CHECK(rep.at("pass").get<bool>() == false);
    CHECK(rep.at("threshold").get<double>() == 1e-18);
}

TEST_CASE("simulate: invariant picture conserves H to the sidecar") {
    const fs::path cfg = write_file("sim_ds.json", R"({
      "mass": {"family": "doubly_singular", "m0": 1.0, "lambda": 1.0, "beta": -1.0},
      "system": {"gamma": -1, "alpha": 0.5, "epsilon": -2.0},
      "trajectory": {"E": -1.0, "phi0": 0.0, "periods": 2.0, "samples": 201},
      "picture": "invariant"
    })");
    const fs::path out = work_dir() / "sim_ds.csv";
    REQUIRE(run("simulate --config " + q(cfg) + " --output " + q(out)) == 0);

    std::istringstream in(slurp(out));
    const pdm::Trajectory traj = pdm::read_trajectory_csv(in);
    CHECK(traj.samples.size() == 201);

    const json drift = json::parse(slurp(work_dir() / "sim_ds.csv.drift.json"));
    CHECK(drift.at("max_relative_H_drift").get<double>() < 1e-8);
    CHECK(drift.at("max_relative_Q_drift").get<double>() < 1e-7);
}

TEST_CASE("simulate: newton picture free particle and fixed-step method") {
    const fs::path cfg = write_file("sim_free.json", R"({
      "mass": {"family": "constant", "m0": 2.0},
      "system": {"gamma": 1, "alpha": 0.5, "epsilon": 0.0},
      "trajectory": {"t1": 2.0, "samples": 21},
      "initial": {"x": 0.0, "v": 1.0},
      "integrator": {"method": "rk4", "initial_step": 0.001},
      "picture": "newton"
    })");
    const fs::path out = work_dir() / "sim_free.csv";
    REQUIRE(run("simulate --config " + q(cfg) + " --output " + q(out)) == 0);

    std::istringstream in(slurp(out));
    const pdm::Trajectory traj = pdm::read_trajectory_csv(in);
    REQUIRE(traj.samples.size() == 21);
    for (const pdm::TrajectorySample& s : traj.samples) {
        CHECK(s.state.x == doctest::Approx(s.state.t).epsilon(1e-9));
        CHECK(s.state.p == doctest::Approx(2.0).epsilon(1e-9));
        CHECK(s.H_script == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(std::isnan(s.Qabs2)); // not defined in the Newton picture
    }
}

TEST_CASE("simulate: dissipation bookkeeping balances on a half period") {
    const fs::path cfg = write_file("sim_dissipative.json", R"({
      "mass": {"family": "singular", "m0": 1.0, "lambda": 1.0},
      "system": {"gamma": 1, "alpha": 0.5, "epsilon": 2.0},
      "trajectory": {"E": 2.5, "phi0": 0.0, "periods": 0.5, "samples": 20001},
      "picture": "canonical"
    })");
    const fs::path out = work_dir() / "sim_dissipative.csv";
    REQUIRE(run("simulate --config " + q(cfg) + " --output " + q(out)) == 0);

    std::istringstream in(slurp(out));
    const pdm::Trajectory traj = pdm::read_trajectory_csv(in);
    REQUIRE(traj.samples.size() == 20001);
    const double dH = traj.samples.back().H_script - traj.samples.front().H_script;
    CHECK(std::abs(dH) > 1e-3); // the window really dissipates

    const json drift = json::parse(slurp(work_dir() / "sim_dissipative.csv.drift.json"));
    CHECK(drift.at("dissipated_energy_check_residual").get<double>() < 1e-6);
    CHECK(drift.at("max_relative_H_drift").get<double>() < 1e-8);
}

TEST_CASE("verify-algebra: families pass, impossible threshold fails") {
    struct Case { const char* name; std::string body; };
    const Case cases[] = {
        {"va_regular.json", R"({
          "mass": {"family": "regular", "m0": 1.0, "lambda": 1.0},
          "system": {"gamma": 1, "alpha": 0.5, "epsilon": 2.0},
          "grid": {"region_energy": 2.75, "n_x": 12, "n_momentum": 8}
        })"},
        {"va_singular.json", R"({
          "mass": {"family": "singular", "m0": 1.0, "lambda": 1.0},
          "system": {"gamma": 1, "alpha": 0.5, "epsilon": 2.0},
          "grid": {"region_energy": 2.75, "n_x": 12, "n_momentum": 8}
        })"},
        {"va_ds.json", R"({
          "mass": {"family": "doubly_singular", "m0": 1.0, "lambda": 1.0, "beta": -1.0},
          "system": {"gamma": -1, "alpha": 0.5, "epsilon": -2.0},
          "grid": {"region_energy": -0.75, "n_x": 12, "n_momentum": 8}
        })"},
        {"va_exponential.json", R"({
          "mass": {"family": "exponential", "m0": 0.5, "kappa": -4.0},
          "system": {"gamma": -1, "alpha": 1.0, "epsilon": -2.0},
          "grid": {"region_energy": -1.0, "n_x": 12, "n_momentum": 8}
        })"},
        {"va_constant.json", R"({
          "mass": {"family": "constant", "m0": 1.0},
          "system": {"gamma": 1, "alpha": 0.5, "epsilon": 2.0},
          "grid": {"region_energy": 2.75, "n_x": 12, "n_momentum": 8}
        })"},
    };
    for (const Case& c : cases) {
        CAPTURE(c.name);
        const fs::path cfg = write_file(c.name, c.body);
        const fs::path out = work_dir() / (std::string(c.name) + ".report.json");
        CHECK(run("verify-algebra --config " + q(cfg) + " --output " + q(out)) == 0);
        const json rep = json::parse(slurp(out));
        CHECK(rep.at("max_factorization_residual").get<double>() < 1e-12);
        CHECK(rep.at("max_bracket1_residual").get<double>() < 1e-6);
        CHECK(rep.at("max_bracket2_residual").get<double>() < 1e-6);
        CHECK(rep.at("bracket1_convergence_ratio").get<double>() > 3.5);
        CHECK(rep.at("bracket2_convergence_ratio").get<double>() > 3.5);
        CHECK(rep.at("grid_points").get<int>() > 0);
    }

    const fs::path cfg = write_file("va_strict.json", cases[0].body);
    CHECK(run("verify-algebra --config " + q(cfg) + " --output " +
              q(work_dir() / "va_strict.json.report.json") +
              " --threshold 1e-18") == 1);
}

TEST_CASE("logging goes to stderr only when asked") {
    const fs::path cfg = write_file("log_probe.json", kTrigWellRegular);
    const fs::path err_on = work_dir() / "stderr_on.txt";
    const fs::path err_off = work_dir() / "stderr_off.txt";
    REQUIRE(run("analytic --config " + q(cfg) + " > /dev/null 2> " + q(err_off)) == 0);
    CHECK(slurp(err_off).empty());
#ifndef _WIN32
    const std::string cmd = "PDM_LOG=info " + std::string(PDM_BIN) +
                            " analytic --config " + q(cfg) + " > /dev/null 2> " +
                            q(err_on.string());
    REQUIRE(std::system(cmd.c_str()) == 0);
    const std::string err = slurp(err_on);
    CHECK(err.find("pdm:") != std::string::npos);
#endif
}
