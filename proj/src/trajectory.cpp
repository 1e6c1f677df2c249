#include "pdm/trajectory.hpp"

#include "pdm/errors.hpp"
#include "pdm/factorization.hpp"

#include <cmath>
#include <limits>

namespace pdm {

const char* picture_name(Picture p) {
    switch (p) {
    case Picture::Newton: return "newton";
    case Picture::Canonical: return "canonical";
    case Picture::Invariant: return "invariant";
    }
    return "invariant";
}

Picture picture_from_name(const std::string& name) {
    if (name == "newton") return Picture::Newton;
    if (name == "canonical") return Picture::Canonical;
    if (name == "invariant") return Picture::Invariant;
    throw ConfigError("unknown picture '" + name +
                      "' (expected newton, canonical or invariant)");
}

TrajectorySample make_trajectory_sample(const System& sys, const PhaseState& st,
                                        Picture pic) {
    TrajectorySample s;
    s.state = st;
    s.H_script = hamiltonian_script_value(sys, st.x, st.p);
    s.H_inv = invariant_H_value(sys, st.x, st.pi);
    if (pic == Picture::Newton) {
        // |Q|^2 belongs to the invariant picture; leave it blank here.
        s.Qabs2 = std::numeric_limits<double>::quiet_NaN();
        return s;
    }
    try {
        s.Qabs2 = std::norm(ladder_values(sys, st.x, st.pi).a_plus);
    } catch (const RegimeError&) {
        s.Qabs2 = std::numeric_limits<double>::quiet_NaN();
    }
    return s;
}

} // namespace pdm
