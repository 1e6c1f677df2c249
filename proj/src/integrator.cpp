#include "pdm/integrator.hpp"

#include "pdm/dynamics.hpp"
#include "pdm/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace pdm {

namespace {

struct Vec2 {
    double a = 0.0;
    double b = 0.0;
};

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                 a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                 b5 = -2187.0 / 6784, b6 = 11.0 / 84;
// Difference between the 5th-order weights and the embedded 4th-order ones.
constexpr double e1 = b1 - 5179.0 / 57600, e3 = b3 - 7571.0 / 16695,
                 e4 = b4 - 393.0 / 640, e5 = b5 + 92097.0 / 339200,
                 e6 = b6 - 187.0 / 2100, e7 = -1.0 / 40;

class Driver {
public:
    Driver(const Rhs2& rhs, const IntegratorConfig& cfg,
           const std::function<double(double)>& bdist, double t0, double y0,
           double y1, double t_end)
        : rhs_(rhs), cfg_(cfg), bdist_(bdist), t_(t0), y_{y0, y1} {
        const double span = std::abs(t_end - t0);
        if (cfg.method == OdeMethod::RK4Fixed)
            h_prop_ = cfg.initial_step > 0.0 ? cfg.initial_step : span / 1000.0;
        else
            h_prop_ = cfg.initial_step > 0.0 ? cfg.initial_step : span / 100.0;
        if (cfg.max_step > 0.0) h_prop_ = std::min(h_prop_, cfg.max_step);
    }

    double t() const { return t_; }
    double y0() const { return y_.a; }
    double y1() const { return y_.b; }
    bool exited() const { return exited_; }
    long long steps() const { return steps_; }

    /// Advance to the target time; returns false when a domain-exit event
    /// halted the march early.
    bool advance_to(double target) {
        const double t_tol = 1e-13 * std::max(1.0, std::abs(target));
        while (target - t_ > t_tol) {
            if (++steps_ > cfg_.max_steps)
                throw NumericalError(
                    "integrator exhausted its step budget (" +
                    std::to_string(cfg_.max_steps) + " steps) at t = " +
                    std::to_string(t_));
            double h = std::min(h_prop_, target - t_);
            if (cfg_.max_step > 0.0) h = std::min(h, cfg_.max_step);
            const bool clipped = h < h_prop_;

            if (cfg_.method == OdeMethod::RK4Fixed) {
                if (!step_rk4(h)) { mark_exit(); return false; }
            } else {
                if (!step_rk45(h, clipped)) {
                    if (exited_) return false;
                    continue; // rejected: retry with the shrunken proposal
                }
            }
            if (bdist_ && bdist_(y_.a) < cfg_.boundary_margin) {
                mark_exit();
                return false;
            }
        }
        t_ = target;
        return true;
    }

private:
    void mark_exit() { exited_ = true; }

    bool step_rk4(double h) {
        try {
            const Vec2 k1 = eval(t_, y_);
            const Vec2 k2 = eval(t_ + h / 2, shift(y_, h / 2, k1));
            const Vec2 k3 = eval(t_ + h / 2, shift(y_, h / 2, k2));
            const Vec2 k4 = eval(t_ + h, shift(y_, h, k3));
            y_.a += h / 6 * (k1.a + 2 * k2.a + 2 * k3.a + k4.a);
            y_.b += h / 6 * (k1.b + 2 * k2.b + 2 * k3.b + k4.b);
            t_ += h;
            return true;
        } catch (const DomainError&) {
            return false; // fixed step cannot adapt: halt at the last state
        }
    }

    /// One adaptive trial. Returns true when the step was accepted; false on
    /// rejection (proposal already shrunk) or exit (exited_ set).
    bool step_rk45(double h, bool clipped) {
        Vec2 y5;
        double err;
        try {
            const Vec2 k1 = eval(t_, y_);
            const Vec2 k2 = eval(t_ + c2 * h, combine(y_, h, {a21}, {k1}));
            const Vec2 k3 = eval(t_ + c3 * h, combine(y_, h, {a31, a32}, {k1, k2}));
            const Vec2 k4 =
                eval(t_ + c4 * h, combine(y_, h, {a41, a42, a43}, {k1, k2, k3}));
            const Vec2 k5 = eval(t_ + c5 * h, combine(y_, h, {a51, a52, a53, a54},
                                                      {k1, k2, k3, k4}));
            const Vec2 k6 = eval(t_ + h, combine(y_, h, {a61, a62, a63, a64, a65},
                                                 {k1, k2, k3, k4, k5}));
            y5 = combine(y_, h, {b1, 0.0, b3, b4, b5, b6},
                         {k1, k2, k3, k4, k5, k6});
            const Vec2 k7 = eval(t_ + h, y5);
            const Vec2 e = {h * (e1 * k1.a + e3 * k3.a + e4 * k4.a + e5 * k5.a +
                                 e6 * k6.a + e7 * k7.a),
                            h * (e1 * k1.b + e3 * k3.b + e4 * k4.b + e5 * k5.b +
                                 e6 * k6.b + e7 * k7.b)};
            const double sa =
                cfg_.abs_tol + cfg_.rel_tol * std::max(std::abs(y_.a), std::abs(y5.a));
            const double sb =
                cfg_.abs_tol + cfg_.rel_tol * std::max(std::abs(y_.b), std::abs(y5.b));
            err = std::sqrt(0.5 * ((e.a / sa) * (e.a / sa) + (e.b / sb) * (e.b / sb)));
        } catch (const DomainError&) {
            // The trial left the validity interval: shrink and retry, or give
            // up (exit event) once the step cannot shrink further.
            h_prop_ = h * 0.5;
            if (h_prop_ < step_floor()) mark_exit();
            return false;
        }

        if (!std::isfinite(err)) err = std::numeric_limits<double>::max();
        if (err <= 1.0) {
            y_ = y5;
            t_ += h;
            const double grow =
                err == 0.0 ? 5.0
                           : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
            if (!clipped)
                h_prop_ = h * grow;
            else
                h_prop_ = std::max(h_prop_, h * grow);
            return true;
        }
        h_prop_ = h * std::clamp(0.9 * std::pow(err, -0.2), 0.1, 1.0);
        if (h_prop_ < step_floor())
            throw NumericalError("integrator step size underflowed at t = " +
                                 std::to_string(t_) +
                                 " (requested tolerance unreachable)");
        return false;
    }

    double step_floor() const { return 1e-14 * std::max(1.0, std::abs(t_)); }

    Vec2 eval(double t, const Vec2& y) {
        auto [da, db] = rhs_(t, y.a, y.b);
        return {da, db};
    }

    static Vec2 shift(const Vec2& y, double h, const Vec2& k) {
        return {y.a + h * k.a, y.b + h * k.b};
    }
    static Vec2 combine(const Vec2& y, double h, std::initializer_list<double> w,
                        std::initializer_list<Vec2> k) {
        Vec2 out = y;
        auto wi = w.begin();
        for (auto ki = k.begin(); ki != k.end(); ++ki, ++wi) {
            out.a += h * *wi * ki->a;
            out.b += h * *wi * ki->b;
        }
        return out;
    }

    const Rhs2& rhs_;
    const IntegratorConfig& cfg_;
    const std::function<double(double)>& bdist_;
    double t_;
    Vec2 y_;
    double h_prop_;
    long long steps_ = 0;
    bool exited_ = false;
};

} // namespace

OdeSolution integrate(const Rhs2& rhs, double y0, double y1, double t0,
                      double t1, int n, const IntegratorConfig& cfg,
                      const std::function<double(double)>& boundary_distance) {
    if (n < 2) throw ConfigError("integrate needs at least 2 sample times");
    if (!(t1 > t0)) throw ConfigError("integrate needs t1 > t0");

    OdeSolution sol;
    Driver drv(rhs, cfg, boundary_distance, t0, y0, y1, t1);
    sol.points.push_back({t0, y0, y1});
    const double dt = (t1 - t0) / (n - 1);
    for (int i = 1; i < n; ++i) {
        const double target = (i == n - 1) ? t1 : t0 + i * dt;
        if (!drv.advance_to(target)) {
            sol.points.push_back({drv.t(), drv.y0(), drv.y1()});
            sol.domain_exit = true;
            sol.exit_time = drv.t();
            sol.steps = drv.steps();
            return sol;
        }
        sol.points.push_back({target, drv.y0(), drv.y1()});
    }
    sol.steps = drv.steps();
    return sol;
}

Trajectory integrate_picture(const System& sys, Picture pic, double x0,
                             double v0, double t0, double t1, int n,
                             const IntegratorConfig& cfg) {
    Rhs2 rhs;
    std::function<double(double, double)> v_of;
    double y1_0 = 0.0;
    switch (pic) {
    case Picture::Newton:
        rhs = [&sys](double t, double x, double v) { return newton_rhs(sys, x, v, t); };
        v_of = [](double, double v) { return v; };
        y1_0 = v0;
        break;
    case Picture::Canonical:
        rhs = [&sys](double t, double x, double p) { return canonical_rhs(sys, x, p, t); };
        v_of = [&sys](double x, double p) { return p / sys.newton_mass(x); };
        y1_0 = sys.newton_mass(x0) * v0;
        break;
    case Picture::Invariant:
        rhs = [&sys](double t, double x, double pi) { return invariant_rhs(sys, x, pi, t); };
        v_of = [&sys](double x, double pi) { return pi / sys.effective_mass(x); };
        y1_0 = sys.effective_mass(x0) * v0;
        break;
    }
    auto bdist = [&sys](double x) { return sys.domain().boundary_distance(x); };

    const OdeSolution sol = integrate(rhs, x0, y1_0, t0, t1, n, cfg, bdist);

    Trajectory traj;
    traj.picture = pic;
    traj.period = std::numeric_limits<double>::quiet_NaN();
    traj.energy = std::numeric_limits<double>::quiet_NaN();
    traj.domain_exit = sol.domain_exit;
    traj.exit_time = sol.domain_exit ? sol.exit_time
                                     : std::numeric_limits<double>::quiet_NaN();
    traj.samples.reserve(sol.points.size());
    for (const OdePoint& pt : sol.points) {
        const double v = v_of(pt.y0, pt.y1);
        traj.samples.push_back(make_trajectory_sample(
            sys, make_phase_state(sys, pt.t, pt.y0, v), pic));
    }
    return traj;
}

DriftReport drift_report(const System& sys, const Trajectory& traj) {
    if (traj.samples.size() < 2)
        throw ConfigError("drift_report needs at least 2 samples");

    DriftReport rep;
    const double H0 = traj.samples.front().H_inv;
    const double denom_h = std::max(std::abs(H0), 1e-12);
    for (const TrajectorySample& s : traj.samples)
        rep.max_relative_H_drift =
            std::max(rep.max_relative_H_drift, std::abs(s.H_inv - H0) / denom_h);

    double q_ref = std::numeric_limits<double>::quiet_NaN();
    for (const TrajectorySample& s : traj.samples) {
        if (std::isnan(s.Qabs2)) continue;
        if (std::isnan(q_ref)) q_ref = s.Qabs2;
        rep.max_relative_Q_drift =
            std::max(rep.max_relative_Q_drift,
                     std::abs(s.Qabs2 - q_ref) / std::max(std::abs(q_ref), 1e-12));
    }

    double integral = 0.0;
    double prev_t = traj.samples.front().state.t;
    double prev_p = power_value(sys, traj.samples.front().state.x,
                                traj.samples.front().state.v);
    for (std::size_t i = 1; i < traj.samples.size(); ++i) {
        const PhaseState& st = traj.samples[i].state;
        const double p_i = power_value(sys, st.x, st.v);
        integral += 0.5 * (prev_p + p_i) * (st.t - prev_t);
        prev_t = st.t;
        prev_p = p_i;
    }
    const double delta = traj.samples.back().H_script - traj.samples.front().H_script;
    const double scale = std::max(1.0, std::abs(traj.samples.front().H_script));
    const double denom = std::abs(delta) > 1e-12 * scale ? std::abs(delta) : 1.0;
    rep.dissipated_energy_check_residual = std::abs(integral - delta) / denom;
    return rep;
}

} // namespace pdm
