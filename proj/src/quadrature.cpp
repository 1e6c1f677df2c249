#include "pdm/quadrature.hpp"
#include "pdm/errors.hpp"

#include <array>
#include <cmath>
#include <sstream>

namespace pdm {
namespace {

// 15-point Kronrod extension of the 7-point Gauss rule on [-1, 1].
// Nodes are symmetric; only the non-negative half is tabulated.
constexpr std::array<double, 8> kronrod_x = {
    0.000000000000000000000000000000000e+00,
    2.077849550078984676006894037732449e-01,
    4.058451513773971669066064120769615e-01,
    5.860872354676911302941448382587296e-01,
    7.415311855993944398638647732807884e-01,
    8.648644233597690727897127886409262e-01,
    9.491079123427585245261896840478513e-01,
    9.914553711208126392068546975263285e-01,
};
constexpr std::array<double, 8> kronrod_w = {
    2.094821410847278280129991748917143e-01,
    2.044329400752988924141619992346491e-01,
    1.903505780647854099132564024210137e-01,
    1.690047266392679028265834265985503e-01,
    1.406532597155259187451895905102379e-01,
    1.047900103222501838398763225415180e-01,
    6.309209262997855329070066318920429e-02,
    2.293532201052922496373200805896959e-02,
};
// Gauss weights belong to the odd-index Kronrod nodes (and the center).
constexpr std::array<double, 4> gauss_w = {
    4.179591836734693877551020408163265e-01,
    3.818300505051189449503697754889751e-01,
    2.797053914892766679014677714237796e-01,
    1.294849661688696932706114326790820e-01,
};

struct PanelEval {
    double k15;
    double g7;
};

PanelEval eval_panel(const std::function<double(double)>& f, double mid, double half) {
    const double fc = f(mid);
    double k15 = kronrod_w[0] * fc;
    double g7 = gauss_w[0] * fc;
    for (int i = 1; i < 8; ++i) {
        const double dx = half * kronrod_x[i];
        const double fsum = f(mid - dx) + f(mid + dx);
        k15 += kronrod_w[i] * fsum;
        if (i % 2 == 0)
            g7 += gauss_w[i / 2] * fsum;
    }
    return {k15 * half, g7 * half};
}

struct Worker {
    const std::function<double(double)>& f;
    const QuadratureConfig& cfg;
    double span;
    double value = 0.0;
    double err = 0.0;
    int panels = 0;

    void refine(double a, double b, const PanelEval& e, int depth) {
        const double width = b - a;
        const double diff = std::abs(e.k15 - e.g7);
        const double budget =
            std::max(cfg.abs_tol, cfg.rel_tol * std::abs(e.k15)) * std::abs(width) / span;
        if (diff <= budget || depth >= cfg.max_depth) {
            if (diff > budget) {
                std::ostringstream msg;
                msg << "quadrature failed to converge on [" << a << ", " << b
                    << "]: panel error " << diff << " exceeds budget " << budget
                    << " at depth " << depth;
                throw NumericalError(msg.str());
            }
            value += e.k15;
            err += diff;
            ++panels;
            return;
        }
        const double m = a + 0.5 * width;
        refine(a, m, eval_panel(f, a + 0.25 * width, 0.25 * width), depth + 1);
        refine(m, b, eval_panel(f, a + 0.75 * width, 0.25 * width), depth + 1);
    }
};

} // namespace

QuadratureResult integrate_adaptive(const std::function<double(double)>& f,
                                    double a, double b,
                                    const QuadratureConfig& cfg) {
    if (a == b)
        return {0.0, 0.0, 0};
    const double sign = (b >= a) ? 1.0 : -1.0;
    const double lo = std::min(a, b);
    const double hi = std::max(a, b);
    Worker w{f, cfg, hi - lo};
    w.refine(lo, hi, eval_panel(f, 0.5 * (lo + hi), 0.5 * (hi - lo)), 0);
    return {sign * w.value, w.err, w.panels};
}

} // namespace pdm
