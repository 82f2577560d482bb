#include "nodalsl/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

#include <json.hpp>

#include "nodalsl/errors.hpp"
#include "nodalsl/nodes_io.hpp"
#include "nodalsl/parallel.hpp"
#include "nodalsl/version.hpp"

namespace nodalsl {

namespace {

using nlohmann::json;
constexpr double kPi = std::numbers::pi;

json boundary_json(const BoundaryParam& b) {
    if (b.is_dirichlet()) return "inf";
    return b.value();
}

json problem_json(const ProblemConfig& cfg, const ProblemSpec& p) {
    return json{{"q", cfg.q_text},
                {"q_mean_subtracted", p.q_mean},
                {"h", boundary_json(p.h)},
                {"H", boundary_json(p.H)},
                {"gamma0", p.gamma0},
                {"gamma1", p.gamma1},
                {"xi0", p.xi0.str()},
                {"xi1", p.xi1.str()},
                {"case", case_name(p.case_tag)}};
}

json tolerances_json(const SolverOptions& s) {
    return json{{"root", s.root_rtol},
                {"node", s.node_tol},
                {"wronskian", s.step.wronskian_tol},
                {"h_max", s.step.h_max},
                {"osc_c", s.step.osc_c},
                {"n_min", s.n_min}};
}

json combo_json(const ReconstructionResult& r) {
    json combos = json::object();
    switch (r.case_tag) {
        case ProblemCase::BothNonlocal:
            combos["gamma0_minus_h"] = r.combo_left.value();
            combos["gamma1_minus_H"] = r.combo_right.value();
            break;
        case ProblemCase::LeftDirichlet:
            combos["gamma1_sin_minus_H"] = r.combo_right.value();
            break;
        case ProblemCase::RightDirichlet:
            combos["gamma0_cos_minus_h"] = r.combo_left.value();
            break;
    }
    return combos;
}

json resolved_json(const ReconstructionResult& r) {
    json out = json::object();
    if (r.h) out["h"] = *r.h;
    if (r.H) out["H"] = *r.H;
    if (r.gamma0) out["gamma0"] = *r.gamma0;
    if (r.gamma1) out["gamma1"] = *r.gamma1;
    return out;
}

/// True combination constants of a known problem (for roundtrip reports).
std::pair<std::optional<double>, std::optional<double>> true_combos(const ProblemSpec& p) {
    switch (p.case_tag) {
        case ProblemCase::BothNonlocal:
            return {p.gamma0 - p.h.value(), p.gamma1 - p.H.value()};
        case ProblemCase::LeftDirichlet:
            return {std::nullopt,
                    p.gamma1 * std::sin(0.5 * kPi * p.xi1.value()) - p.H.value()};
        case ProblemCase::RightDirichlet:
            return {p.gamma0 * std::cos(0.5 * kPi * p.xi0.value()) - p.h.value(),
                    std::nullopt};
    }
    return {std::nullopt, std::nullopt};
}

struct QErrors {
    double sup = 0.0;
    double l2 = 0.0;
};

QErrors q_errors(const ReconstructionResult& rec, const ProblemSpec& truth) {
    QErrors e;
    double acc = 0.0;
    const int n = static_cast<int>(rec.x.size());
    const double h = 1.0 / (n - 1);
    for (int i = 0; i < n; ++i) {
        const double d = rec.q[i] - truth.q(rec.x[i]);
        e.sup = std::max(e.sup, std::fabs(d));
        const double w = (i == 0 || i == n - 1) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
        acc += w * d * d;
    }
    e.l2 = std::sqrt(acc * h / 3.0);
    return e;
}

ReconstructionResult reconstruct_layers(const std::vector<const DatasetLayer*>& layers,
                                        const ProblemSpec& p, const SmoothingConfig& smoothing,
                                        int grid_points) {
    std::vector<LimitSample> samples;
    for (const auto* layer : layers) {
        auto s = limit_samples(*layer, p.case_tag);
        samples.insert(samples.end(), s.begin(), s.end());
    }
    const auto curve = fit_limit_curve(std::move(samples), p.case_tag, smoothing);
    return reconstruct(curve, p.case_tag, p.xi0, p.xi1, grid_points);
}

/// The finite-n analogue of the limit curve, used by asym-check: the limit
/// form plus the index-dependent oscillatory coefficients that have not yet
/// been filtered by the admissible subsequence.
double scaled_residual_truth(const ProblemSpec& p, int n, double x) {
    const double nd = n;
    const double sign = (n % 2 == 0) ? 1.0 : -1.0;
    const double q_half = half_integral_Q(p.q, x);
    switch (p.case_tag) {
        case ProblemCase::BothNonlocal: {
            const double an = p.gamma1 * std::cos(nd * kPi * p.xi1.value()) -
                              p.gamma0 * std::cos(nd * kPi * (1.0 - p.xi0.value()));
            return (p.h.value() - p.H.value() + sign * an) * x + q_half - p.h.value() +
                   p.gamma0 * std::cos(nd * kPi * p.xi0.value());
        }
        case ProblemCase::LeftDirichlet:
            return (-p.H.value() +
                    sign * p.gamma1 * std::sin((nd + 0.5) * kPi * p.xi1.value())) *
                       x +
                   q_half;
        case ProblemCase::RightDirichlet: {
            const double g = p.gamma0 * std::cos((nd + 0.5) * kPi * p.xi0.value());
            return (p.h.value() - g) * x - p.h.value() + g + q_half;
        }
    }
    return 0.0;
}

void require_n_list(const ProblemConfig& cfg) {
    if (cfg.n_list.empty())
        throw ConfigError("n_list or n_range is required for this command", "n_list");
}

}  // namespace

void cmd_forward(const std::string& config_path, const std::string& out_path) {
    const ProblemConfig cfg = parse_config_file(config_path);
    require_n_list(cfg);
    const ProblemSpec problem = cfg.to_problem();
    const NodalDataset ds = generate_dataset(problem, cfg.n_list, cfg.solver);
    write_nodes_csv(out_path, ds);

    json eigen = json::array();
    for (const auto& layer : ds.layers) {
        eigen.push_back(json{{"n", layer.eigen.n},
                             {"k", layer.eigen.k},
                             {"seed", layer.eigen.seed},
                             {"residual", layer.eigen.residual},
                             {"nodes", layer.nodes.size()},
                             {"best_effort", layer.eigen.best_effort},
                             {"multiple_roots", layer.eigen.multiple_roots}});
    }
    const json meta{{"tool", "nodalsl"},
                    {"version", kVersion},
                    {"problem", problem_json(cfg, problem)},
                    {"tolerances", tolerances_json(cfg.solver)},
                    {"n_list", cfg.n_list},
                    {"eigenvalues", eigen}};
    write_text_atomic(out_path + ".meta.json", meta.dump(2) + "\n");
}

void cmd_inverse(const InverseRequest& req) {
    const ProblemCase c = req.case_tag;
    if (c != ProblemCase::LeftDirichlet && !req.xi0)
        throw ConfigError("xi0 is required for this case", "xi0");
    if (c != ProblemCase::RightDirichlet && !req.xi1)
        throw ConfigError("xi1 is required for this case", "xi1");
    const Rational xi0 = req.xi0.value_or(Rational{1, 2});
    const Rational xi1 = req.xi1.value_or(Rational{1, 2});

    const NodalDataset ds = read_nodes_csv(req.nodes_path);
    const auto layers = select_subsequence(ds, xi0, xi1, c);

    std::vector<LimitSample> samples;
    for (const auto* layer : layers) {
        auto s = limit_samples(*layer, c);
        samples.insert(samples.end(), s.begin(), s.end());
    }
    const auto curve = fit_limit_curve(std::move(samples), c, req.smoothing);
    ReconstructionResult rec = reconstruct(curve, c, req.xi0, req.xi1, req.grid_points);

    const bool any_known =
        req.known.h || req.known.H || req.known.gamma0 || req.known.gamma1;
    if (any_known) rec = resolve_constants(std::move(rec), req.known);

    write_text_atomic(req.out_path, xy_to_csv("q", rec.x, rec.q));
    const json summary{{"case", case_name(c)},
                       {"combo_constants", combo_json(rec)},
                       {"resolved", resolved_json(rec)},
                       {"q_mean_subtracted", rec.q_mean_subtracted},
                       {"errors", json{{"fit_rms", rec.fit_rms}}},
                       {"layers_used", rec.layers_used}};
    write_text_atomic(req.out_path + ".summary.json", summary.dump(2) + "\n");
}

int cmd_roundtrip(const std::string& config_path, const KnownValues& known,
                  const std::string& report_path) {
    const ProblemConfig cfg = parse_config_file(config_path);
    require_n_list(cfg);
    const ProblemSpec problem = cfg.to_problem();
    const NodalDataset ds = generate_dataset(problem, cfg.n_list, cfg.solver);
    const auto layers = select_subsequence(ds, problem.xi0, problem.xi1, problem.case_tag);

    const auto [truth_left, truth_right] = true_combos(problem);

    json per_layer = json::array();
    std::vector<double> sup_trend;
    for (const auto* layer : layers) {
        const auto rec = reconstruct_layers({layer}, problem, cfg.smoothing, cfg.grid_points);
        const QErrors e = q_errors(rec, problem);
        sup_trend.push_back(e.sup);
        json row{{"m", layer->eigen.n},
                 {"q_sup_error", e.sup},
                 {"q_l2_error", e.l2},
                 {"fit_rms", rec.fit_rms}};
        if (truth_left && rec.combo_left)
            row["combo_left_error"] = std::fabs(*rec.combo_left - *truth_left);
        if (truth_right && rec.combo_right)
            row["combo_right_error"] = std::fabs(*rec.combo_right - *truth_right);
        per_layer.push_back(std::move(row));
    }

    // combined reconstruction over every admissible layer
    ReconstructionResult final_rec =
        reconstruct_layers(layers, problem, cfg.smoothing, cfg.grid_points);
    const QErrors final_e = q_errors(final_rec, problem);

    const bool any_known = known.h || known.H || known.gamma0 || known.gamma1;
    json const_errors = json::object();
    double worst_const_error = 0.0;
    if (any_known) {
        final_rec = resolve_constants(std::move(final_rec), known);
        auto record = [&](const char* name, const std::optional<double>& got, double want,
                          bool was_input) {
            if (!got || was_input) return;
            const double err = std::fabs(*got - want);
            const_errors[name] = err;
            worst_const_error = std::max(worst_const_error, err);
        };
        record("h", final_rec.h, problem.h.is_dirichlet() ? 0.0 : problem.h.value(),
               known.h.has_value());
        record("H", final_rec.H, problem.H.is_dirichlet() ? 0.0 : problem.H.value(),
               known.H.has_value());
        record("gamma0", final_rec.gamma0, problem.gamma0, known.gamma0.has_value());
        record("gamma1", final_rec.gamma1, problem.gamma1, known.gamma1.has_value());
    } else {
        if (truth_left && final_rec.combo_left) {
            const double err = std::fabs(*final_rec.combo_left - *truth_left);
            const_errors["combo_left"] = err;
            worst_const_error = std::max(worst_const_error, err);
        }
        if (truth_right && final_rec.combo_right) {
            const double err = std::fabs(*final_rec.combo_right - *truth_right);
            const_errors["combo_right"] = err;
            worst_const_error = std::max(worst_const_error, err);
        }
    }

    bool decreasing = true;
    for (std::size_t i = 1; i < sup_trend.size(); ++i)
        if (sup_trend[i] > 1.2 * sup_trend[i - 1]) decreasing = false;
    if (sup_trend.size() >= 2 && sup_trend.back() >= sup_trend.front()) decreasing = false;

    json violations = json::array();
    if (cfg.rt_max_q_sup_error && sup_trend.back() > *cfg.rt_max_q_sup_error)
        violations.push_back("q_sup_error " + format_double(sup_trend.back()) +
                             " exceeds threshold " + format_double(*cfg.rt_max_q_sup_error) +
                             " at the largest layer");
    if (cfg.rt_max_constant_error && worst_const_error > *cfg.rt_max_constant_error)
        violations.push_back("constant error " + format_double(worst_const_error) +
                             " exceeds threshold " + format_double(*cfg.rt_max_constant_error));
    if (cfg.rt_require_decreasing && !decreasing)
        violations.push_back("per-layer q sup errors are not decreasing");

    const json report{{"tool", "nodalsl"},
                      {"version", kVersion},
                      {"problem", problem_json(cfg, problem)},
                      {"layers", final_rec.layers_used},
                      {"per_layer", per_layer},
                      {"final",
                       json{{"q_sup_error", final_e.sup},
                            {"q_l2_error", final_e.l2},
                            {"q_mean_subtracted", final_rec.q_mean_subtracted},
                            {"combo_constants", combo_json(final_rec)},
                            {"resolved", resolved_json(final_rec)},
                            {"constant_errors", const_errors}}},
                      {"trend_decreasing", decreasing},
                      {"violations", violations}};
    write_text_atomic(report_path, report.dump(2) + "\n");

    std::printf("roundtrip: largest-layer q sup error %.3e, %s trend, %zu violation(s)\n",
                sup_trend.back(), decreasing ? "decreasing" : "non-decreasing",
                violations.size());
    return violations.empty() ? kExitOk : kExitAcceptance;
}

void cmd_asym_check(const std::string& config_path, const std::string& report_path) {
    const ProblemConfig cfg = parse_config_file(config_path);
    require_n_list(cfg);
    for (int n : cfg.n_list)
        if (n < cfg.solver.n_min)
            throw ConfigError("index " + std::to_string(n) + " is below n_min=" +
                                  std::to_string(cfg.solver.n_min) +
                                  "; asymptotic checks need large indices",
                              "n_list");
    const ProblemSpec problem = cfg.to_problem();

    std::vector<int> ns = cfg.n_list;
    std::sort(ns.begin(), ns.end());
    ns.erase(std::unique(ns.begin(), ns.end()), ns.end());

    struct Row {
        int n;
        double k, seed, n_gap, node_max_dev;
    };
    std::vector<Row> rows(ns.size());
    parallel_for(ns.size(), [&](std::size_t i) {
        const int n = ns[i];
        const SpectralPoint sp = find_eigenvalue(problem, n, cfg.solver);
        DatasetLayer layer{sp, find_nodes(problem, sp, cfg.solver)};
        double dev = 0.0;
        for (const auto& sample : limit_samples(layer, problem.case_tag))
            dev = std::max(dev,
                           std::fabs(sample.F - scaled_residual_truth(problem, n, sample.x)));
        rows[i] = {n, sp.k, sp.seed, n * std::fabs(sp.k - sp.seed), dev};
    });

    auto verdict = [](double first, double last) {
        return last < first ? "decreasing" : "not decreasing";
    };
    json table = json::array();
    std::printf("%8s %18s %14s %14s\n", "n", "k_n", "n*|k-seed|", "node max dev");
    for (const auto& r : rows) {
        std::printf("%8d %18.10f %14.3e %14.3e\n", r.n, r.k, r.n_gap, r.node_max_dev);
        table.push_back(json{{"n", r.n},
                             {"k", r.k},
                             {"seed", r.seed},
                             {"n_gap", r.n_gap},
                             {"node_max_dev", r.node_max_dev}});
    }
    const json report{
        {"tool", "nodalsl"},
        {"version", kVersion},
        {"problem", problem_json(cfg, problem)},
        {"rows", table},
        {"eigenvalue_trend", verdict(rows.front().n_gap, rows.back().n_gap)},
        {"node_trend", verdict(rows.front().node_max_dev, rows.back().node_max_dev)}};
    write_text_atomic(report_path, report.dump(2) + "\n");
}

}  // namespace nodalsl
