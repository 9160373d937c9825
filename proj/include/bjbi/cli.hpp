#pragma once

// Command-line front end: `bjbi solve|classify|bc|verify`.

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "bjbi/graphicality.hpp"

namespace bjbi {

inline constexpr const char* kToolName = "bjbi";
inline constexpr const char* kToolVersion = "1.0.0";

enum ExitCode : int { exit_ok = 0, exit_input = 2, exit_degenerate = 3, exit_check = 4 };

struct DomainArg {
    DomainShape shape = DomainShape::rect;
    double u0 = 0, u1 = 0, v0 = 0, v1 = 0;  // rect bounds
    double m = 0;                           // diamond size
    friend bool operator==(const DomainArg&, const DomainArg&) = default;
};

struct RunConfig {
    std::string command;
    std::string input;
    std::optional<DomainArg> domain;
    std::optional<std::pair<int, int>> grid;
    Criterion criterion = Criterion::pqd;
    std::optional<double> tol;
    std::string out_dir = ".";

    /// One `key = value` line per field in a fixed order; unset optionals are `default`.
    std::string canonical() const;
    /// Inverse of canonical(). Throws ParseError.
    static RunConfig from_canonical(const std::string& text);
    friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// "rect u0 u1 v0 v1" or "diamond M". Throws ParseError.
DomainArg parse_domain_arg(const std::vector<std::string>& words);
/// "NxM" with positive integers. Throws ParseError.
std::pair<int, int> parse_grid_arg(const std::string& text);

/// Default |H| tolerance (relative to the curvature scale) for solve and bc.
inline constexpr double kSolveHTol = 1e-8;
/// Default tolerance for checks on finite-difference data in verify.
inline constexpr double kVerifyTol = 1e-4;

/// Runs one command; messages go to `log`. Returns the process exit code.
int run_command(const RunConfig& cfg, std::ostream& log);

/// Parses argv and runs. Usage errors exit with exit_input.
int cli_main(int argc, char** argv, std::ostream& log);

}  // namespace bjbi
