#pragma once

#include "pdm/trajectory.hpp"

#include <iosfwd>
#include <string>

namespace pdm {

/// Render a double with 17 significant digits (shortest representation that
/// round-trips exactly); NaN renders as the empty string.
std::string format_value(double v);

/// Write the trajectory as CSV with the fixed column order
/// t,x,v,p,pi,H_script,H_inv,Qabs2. Unavailable diagnostics (NaN) become
/// empty fields. Output is locale-independent and deterministic.
void write_trajectory_csv(std::ostream& out, const Trajectory& traj);

/// Parse a CSV stream produced by write_trajectory_csv. Empty fields load as
/// NaN; the header row is validated.
Trajectory read_trajectory_csv(std::istream& in);

} // namespace pdm
