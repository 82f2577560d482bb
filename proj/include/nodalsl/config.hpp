#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nodalsl/inverse.hpp"

namespace nodalsl {

/// Parsed flat key-value config (TOML-like: `key = value`, `#` comments).
/// Recognized keys:
///   q, h, H, gamma0, gamma1, xi0, xi1, n_min, n_list, n_range,
///   tolerances.{root,node,wronskian,h_max,osc_c},
///   smoothing.{window,degree,richardson}, grid.points,
///   roundtrip.{max_q_sup_error,max_constant_error,require_decreasing}
struct ProblemConfig {
    std::string q_text = "0";
    BoundaryParam h = BoundaryParam::finite(0.0);
    BoundaryParam H = BoundaryParam::finite(0.0);
    double gamma0 = 0.0, gamma1 = 0.0;
    Rational xi0{1, 2}, xi1{1, 2};
    std::vector<int> n_list;

    SolverOptions solver;
    SmoothingConfig smoothing;
    int grid_points = 201;

    std::optional<double> rt_max_q_sup_error;
    std::optional<double> rt_max_constant_error;
    bool rt_require_decreasing = false;

    std::string base_dir;  // for q = file:<path> resolution

    /// Build the validated problem (parses the potential expression,
    /// normalizes its mean).  Throws ConfigError naming the bad field.
    [[nodiscard]] ProblemSpec to_problem() const;
};

ProblemConfig parse_config_text(const std::string& text, const std::string& base_dir = {});
ProblemConfig parse_config_file(const std::string& path);

/// Potential from config text: an expression, or `file:<csv>` with columns
/// x,q on a uniform grid.
Potential potential_from_config(const std::string& q_text, const std::string& base_dir);

}  // namespace nodalsl
