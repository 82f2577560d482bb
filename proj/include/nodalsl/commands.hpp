#pragma once

#include <optional>
#include <string>

#include "nodalsl/config.hpp"

namespace nodalsl {

// Exit-status contract shared by the CLI and the command implementations:
// 0 success, 2 config error, 3 solver error, 4 acceptance violation.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitSolver = 3;
inline constexpr int kExitAcceptance = 4;

/// Solve the forward problem of a config and write the nodes CSV plus a
/// sidecar metadata JSON at `<out_path>.meta.json`.
void cmd_forward(const std::string& config_path, const std::string& out_path);

struct InverseRequest {
    std::string nodes_path;
    std::string out_path;  // q CSV; summary goes to <out_path>.summary.json
    ProblemCase case_tag = ProblemCase::BothNonlocal;
    std::optional<Rational> xi0, xi1;
    KnownValues known;
    SmoothingConfig smoothing;
    int grid_points = 201;
};

/// Reconstruct q and the boundary-constant combinations from a nodes file.
void cmd_inverse(const InverseRequest& req);

/// Forward-solve, reconstruct per admissible layer and combined, compare
/// against the config's own potential and constants, and write a JSON
/// report.  Returns kExitOk, or kExitAcceptance when a threshold configured
/// under roundtrip.* is violated.
int cmd_roundtrip(const std::string& config_path, const KnownValues& known,
                  const std::string& report_path);

/// Tables of eigenvalue-seed gaps n·|k_n - seed| and nodal residual
/// deviations against the analytic limit form, with trend verdicts.
void cmd_asym_check(const std::string& config_path, const std::string& report_path);

}  // namespace nodalsl
