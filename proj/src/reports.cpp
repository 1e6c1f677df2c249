#include "pdm/reports.hpp"

#include <json.hpp>

namespace pdm {

using nlohmann::json;

std::string to_json_string(const AlgebraReport& rep) {
    json doc{
        {"max_factorization_residual", rep.max_factorization_residual},
        {"max_bracket1_residual", rep.max_bracket1_residual},
        {"max_bracket2_residual", rep.max_bracket2_residual},
        {"max_bracket1_residual_step", rep.max_bracket1_residual_step},
        {"max_bracket1_residual_half_step", rep.max_bracket1_residual_half_step},
        {"max_bracket2_residual_step", rep.max_bracket2_residual_step},
        {"max_bracket2_residual_half_step", rep.max_bracket2_residual_half_step},
        {"bracket1_convergence_ratio", rep.bracket1_convergence_ratio},
        {"bracket2_convergence_ratio", rep.bracket2_convergence_ratio},
        {"fd_step", rep.fd_step},
        {"grid_description", rep.grid_description},
        {"grid_points", rep.grid_points},
        {"skipped_points", rep.skipped_points},
    };
    return doc.dump(2) + "\n";
}

std::string to_json_string(const DriftReport& rep) {
    json doc{
        {"max_relative_H_drift", rep.max_relative_H_drift},
        {"max_relative_Q_drift", rep.max_relative_Q_drift},
        {"dissipated_energy_check_residual", rep.dissipated_energy_check_residual},
    };
    return doc.dump(2) + "\n";
}

std::string to_json_string(const CompareReport& rep) {
    json doc{
        {"max_abs_dx", rep.max_abs_dx},
        {"max_abs_dpi", rep.max_abs_dpi},
        {"threshold", rep.threshold},
        {"pass", rep.pass},
        {"period", rep.period},
        {"energy", rep.energy},
        {"samples", rep.samples},
        {"domain_exit", rep.domain_exit},
    };
    return doc.dump(2) + "\n";
}

} // namespace pdm
