#include "pdm/csv.hpp"

#include "pdm/errors.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <vector>

namespace pdm {

namespace {

constexpr const char* kHeader = "t,x,v,p,pi,H_script,H_inv,Qabs2";

double parse_field(const std::string& field, int line_no) {
    if (field.empty()) return std::numeric_limits<double>::quiet_NaN();
    double v = 0.0;
    const char* first = field.data();
    const char* last = field.data() + field.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last)
        throw ConfigError("CSV line " + std::to_string(line_no) +
                          ": cannot parse number '" + field + "'");
    return v;
}

} // namespace

std::string format_value(double v) {
    if (std::isnan(v)) return {};
    std::array<char, 32> buf{};
    auto [ptr, ec] =
        std::to_chars(buf.data(), buf.data() + buf.size(), v,
                      std::chars_format::general, 17);
    return std::string(buf.data(), ptr);
}

void write_trajectory_csv(std::ostream& out, const Trajectory& traj) {
    out << kHeader << '\n';
    for (const TrajectorySample& s : traj.samples) {
        out << format_value(s.state.t) << ',' << format_value(s.state.x) << ','
            << format_value(s.state.v) << ',' << format_value(s.state.p) << ','
            << format_value(s.state.pi) << ',' << format_value(s.H_script) << ','
            << format_value(s.H_inv) << ',' << format_value(s.Qabs2) << '\n';
    }
}

Trajectory read_trajectory_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line))
        throw ConfigError("CSV stream is empty");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != kHeader)
        throw ConfigError("unexpected CSV header '" + line + "'");

    Trajectory traj;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;

        std::vector<std::string> fields;
        std::string field;
        std::istringstream row(line);
        while (std::getline(row, field, ',')) fields.push_back(field);
        // A trailing empty field is eaten by getline; restore it.
        if (!line.empty() && line.back() == ',') fields.emplace_back();
        if (fields.size() != 8)
            throw ConfigError("CSV line " + std::to_string(line_no) +
                              ": expected 8 fields, got " +
                              std::to_string(fields.size()));

        TrajectorySample s;
        s.state.t = parse_field(fields[0], line_no);
        s.state.x = parse_field(fields[1], line_no);
        s.state.v = parse_field(fields[2], line_no);
        s.state.p = parse_field(fields[3], line_no);
        s.state.pi = parse_field(fields[4], line_no);
        s.H_script = parse_field(fields[5], line_no);
        s.H_inv = parse_field(fields[6], line_no);
        s.Qabs2 = parse_field(fields[7], line_no);
        traj.samples.push_back(s);
    }
    return traj;
}

} // namespace pdm
