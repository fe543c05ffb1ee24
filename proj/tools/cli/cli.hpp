#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "potapov/errors.hpp"

namespace potapov::cli {

enum ExitCode : int {
    kSuccess = 0,
    kInputError = 1,
    kNumericalError = 2,
    kSingularGuard = 3,
};

/// Input errors map to 1, numerical and contour failures to 2.
[[nodiscard]] int exit_code_for(ErrorKind kind);

struct RunConfig {
    std::string command;
    std::string net_path;
    std::string ss_path;
    std::string ref_path;
    std::optional<std::vector<double>> re_bounds;
    std::optional<std::vector<double>> im_bounds;
    double omega_max = 30.0;
    std::optional<double> omega_min;
    int grid_points = 601;
    std::optional<int> modes;
    std::optional<int> pade_base;
    bool separate_first = false;
    bool allow_singular = false;
    std::string out_path;
    std::string format;
    double t_end = 20.0;
    int steps = 2000;
    int drive_port = 0;
    double drive_amplitude = 1.0;
    double drive_omega = 0.0;
    std::string catalog_name;
    double reflectivity = 0.8;
    double round_trip = 1.0;
};

/// Parses argv and runs one subcommand, writing results to out (or --out) and
/// diagnostics to err. Returns the process exit code.
[[nodiscard]] int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace potapov::cli
