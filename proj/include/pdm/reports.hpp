#pragma once

#include "pdm/factorization.hpp"
#include "pdm/integrator.hpp"

#include <string>

namespace pdm {

/// Outcome of an analytic-vs-numeric trajectory comparison.
struct CompareReport {
    double max_abs_dx = 0.0;
    double max_abs_dpi = 0.0;
    double threshold = 0.0;
    bool pass = false;
    double period = 0.0;
    double energy = 0.0;
    int samples = 0;
    bool domain_exit = false;
};

std::string to_json_string(const AlgebraReport& rep);
std::string to_json_string(const DriftReport& rep);
std::string to_json_string(const CompareReport& rep);

} // namespace pdm
