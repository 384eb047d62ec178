#include "vdp/csv.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "vdp/dynamics.hpp"
#include "vdp/errors.hpp"

namespace vdp {

std::array<double, 14> csv_row(const Sample& s) {
    const CartesianState c = polar_to_cartesian({s.r, s.theta});
    return {s.t,  s.r,         s.theta, c.x,   c.y,   s.v,   s.u_raw,
            s.u_applied, s.clamped ? 1.0 : 0.0, s.b0, s.b1, s.mu, s.a1, s.a2};
}

void write_trajectory_csv(const std::string& path, const Trajectory& traj) {
    std::FILE* f = std::fopen(path.c_str(), "wb");
    if (!f) throw Error(Status::runtime_error, "cannot open " + path + " for writing");
    std::fputs(kTrajectoryHeader, f);
    std::fputc('\n', f);
    char buf[32];
    for (const Sample& s : traj.samples) {
        const auto row = csv_row(s);
        for (size_t i = 0; i < row.size(); ++i) {
            if (i == 8) {
                std::snprintf(buf, sizeof buf, "%d", s.clamped ? 1 : 0);
            } else {
                std::snprintf(buf, sizeof buf, "%.17g", row[i]);
            }
            if (i) std::fputc(',', f);
            std::fputs(buf, f);
        }
        std::fputc('\n', f);
    }
    if (std::fclose(f) != 0) throw Error(Status::runtime_error, "failed to close " + path);
}

std::vector<std::array<double, 14>> read_trajectory_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(Status::runtime_error, "cannot open " + path);
    std::string line;
    if (!std::getline(in, line)) throw Error(Status::runtime_error, path + " is empty");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != kTrajectoryHeader)
        throw Error(Status::runtime_error, path + " has unexpected header: " + line);
    std::vector<std::array<double, 14>> rows;
    size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::array<double, 14> row{};
        const char* p = line.c_str();
        for (size_t i = 0; i < row.size(); ++i) {
            char* end = nullptr;
            row[i] = std::strtod(p, &end);
            if (end == p)
                throw Error(Status::runtime_error,
                            path + ":" + std::to_string(lineno) + ": bad field " +
                                std::to_string(i + 1));
            p = end;
            if (i + 1 < row.size()) {
                if (*p != ',')
                    throw Error(Status::runtime_error, path + ":" + std::to_string(lineno) +
                                                           ": expected 14 fields");
                ++p;
            }
        }
        if (*p != '\0')
            throw Error(Status::runtime_error,
                        path + ":" + std::to_string(lineno) + ": trailing characters");
        rows.push_back(row);
    }
    return rows;
}

} // namespace vdp
