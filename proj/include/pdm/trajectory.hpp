#pragma once

#include "pdm/dynamics.hpp"

#include <string>
#include <vector>

namespace pdm {

enum class Picture { Newton, Canonical, Invariant };

/// One trajectory row: the phase-space point plus per-sample diagnostics.
/// Diagnostics that are unavailable for a picture/regime are NaN (and are
/// written as empty CSV fields).
struct TrajectorySample {
    PhaseState state;
    double H_script = 0.0; ///< dissipative Hamiltonian p^2/2m + V
    double H_inv = 0.0;    ///< conserved Hamiltonian pi^2/2m_eff + V_eff
    double Qabs2 = 0.0;    ///< |Q+-|^2 = |A+-|^2
};

struct Trajectory {
    std::vector<TrajectorySample> samples;
    Picture picture = Picture::Invariant;
    double period = 0.0; ///< oscillation period when known, else NaN
    double energy = 0.0; ///< trajectory energy when known, else NaN
    bool domain_exit = false;
    double exit_time = 0.0; ///< time of the domain-exit event when it fired
};

const char* picture_name(Picture p);
Picture picture_from_name(const std::string& name);

/// Attach the per-sample diagnostics to a phase-space point. |Q|^2 is NaN in
/// the Newton picture and whenever gamma*H < 0 makes the ladder functions
/// complex-degenerate.
TrajectorySample make_trajectory_sample(const System& sys, const PhaseState& st,
                                        Picture pic);

} // namespace pdm
