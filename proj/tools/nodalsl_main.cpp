// Command-line frontend: forward nodal datasets, inverse reconstruction,
// round-trip verification and asymptotic diagnostics for Sturm-Liouville
// problems with interior-coupled boundary conditions.

#include <cstdio>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "nodalsl/commands.hpp"
#include "nodalsl/version.hpp"

namespace {

struct KnownFlags {
    std::optional<double> h, H, gamma0, gamma1;

    void attach(CLI::App* app) {
        app->add_option("--known-h", h, "h is known to be this value");
        app->add_option("--known-H", H, "H is known to be this value");
        app->add_option("--known-gamma0", gamma0, "gamma0 is known to be this value");
        app->add_option("--known-gamma1", gamma1, "gamma1 is known to be this value");
    }

    [[nodiscard]] nodalsl::KnownValues values() const { return {h, H, gamma0, gamma1}; }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"nodal Sturm-Liouville solver and reconstructor"};
    app.set_version_flag("--version", std::string("nodalsl ") + nodalsl::kVersion);
    app.require_subcommand(1);

    // forward
    auto* fwd = app.add_subcommand("forward", "solve a config and write the nodes CSV");
    std::string fwd_config, fwd_out;
    fwd->add_option("--config", fwd_config, "problem config file")->required();
    fwd->add_option("--out", fwd_out, "output nodes CSV path")->required();

    // inverse
    auto* inv = app.add_subcommand("inverse", "reconstruct q from a nodes CSV");
    std::string inv_nodes, inv_out, inv_case, inv_xi0, inv_xi1;
    KnownFlags inv_known;
    int inv_window = 7, inv_degree = 3, inv_grid = 201;
    bool inv_no_richardson = false;
    inv->add_option("--nodes", inv_nodes, "nodes CSV file")->required();
    inv->add_option("--case", inv_case, "boundary case: i, ii or iii")->required();
    inv->add_option("--xi0", inv_xi0, "xi0 as p/r (cases i and iii)");
    inv->add_option("--xi1", inv_xi1, "xi1 as p/r (cases i and ii)");
    inv->add_option("--out", inv_out, "output q CSV path (summary JSON alongside)")->required();
    inv->add_option("--window", inv_window, "local fit window (default 7)");
    inv->add_option("--degree", inv_degree, "local fit degree (default 3)");
    inv->add_option("--grid-points", inv_grid, "reconstruction grid size (odd, default 201)");
    inv->add_flag("--no-richardson", inv_no_richardson, "skip extrapolation across layers");
    inv_known.attach(inv);

    // roundtrip
    auto* rt = app.add_subcommand("roundtrip", "forward-solve, reconstruct and compare");
    std::string rt_config, rt_report;
    KnownFlags rt_known;
    rt->add_option("--config", rt_config, "problem config file")->required();
    rt->add_option("--report", rt_report, "output report JSON path")->required();
    rt_known.attach(rt);

    // asym-check
    auto* ac = app.add_subcommand("asym-check", "eigenvalue/node asymptotic-rate tables");
    std::string ac_config, ac_report;
    ac->add_option("--config", ac_config, "problem config file")->required();
    ac->add_option("--report", ac_report, "output report JSON path")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*fwd) {
            nodalsl::cmd_forward(fwd_config, fwd_out);
        } else if (*inv) {
            nodalsl::InverseRequest req;
            req.nodes_path = inv_nodes;
            req.out_path = inv_out;
            req.case_tag = nodalsl::parse_case(inv_case);
            if (!inv_xi0.empty()) req.xi0 = nodalsl::parse_rational(inv_xi0);
            if (!inv_xi1.empty()) req.xi1 = nodalsl::parse_rational(inv_xi1);
            req.known = inv_known.values();
            req.smoothing.window = inv_window;
            req.smoothing.degree = inv_degree;
            req.smoothing.richardson = !inv_no_richardson;
            req.grid_points = inv_grid;
            nodalsl::cmd_inverse(req);
        } else if (*rt) {
            return nodalsl::cmd_roundtrip(rt_config, rt_known.values(), rt_report);
        } else if (*ac) {
            nodalsl::cmd_asym_check(ac_config, ac_report);
        }
    } catch (const nodalsl::ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return nodalsl::kExitConfig;
    } catch (const nodalsl::Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return nodalsl::kExitSolver;
    }
    return nodalsl::kExitOk;
}
