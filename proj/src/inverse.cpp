#include "nodalsl/inverse.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <numbers>
#include <string>

#include "nodalsl/errors.hpp"

namespace nodalsl {

namespace {

constexpr double kPi = std::numbers::pi;

double layer_scale(int m, ProblemCase c) {
    return c == ProblemCase::BothNonlocal ? static_cast<double>(m)
                                          : static_cast<double>(m) + 0.5;
}

// Piecewise-linear interpolation over (x, F) pairs sorted by x, extrapolating
// with the edge segments.
double linear_interp(const std::vector<LimitSample>& pts, double x) {
    if (pts.size() == 1) return pts.front().F;
    auto hi = std::lower_bound(pts.begin(), pts.end(), x,
                               [](const LimitSample& s, double v) { return s.x < v; });
    if (hi == pts.begin()) ++hi;
    if (hi == pts.end()) --hi;
    const auto lo = hi - 1;
    const double t = (x - lo->x) / (hi->x - lo->x);
    return lo->F + t * (hi->F - lo->F);
}

// Solve the (d+1)x(d+1) normal equations by Gaussian elimination with
// partial pivoting.  Small and dense; d <= 3 in practice.
std::vector<double> solve_normal(std::vector<std::vector<double>> a, std::vector<double> b) {
    const std::size_t n = b.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::fabs(a[r][col]) > std::fabs(a[piv][col])) piv = r;
        std::swap(a[piv], a[col]);
        std::swap(b[piv], b[col]);
        if (a[col][col] == 0.0) throw Error("singular normal equations in local fit");
        for (std::size_t r = col + 1; r < n; ++r) {
            const double f = a[r][col] / a[col][col];
            for (std::size_t cc = col; cc < n; ++cc) a[r][cc] -= f * a[col][cc];
            b[r] -= f * b[col];
        }
    }
    std::vector<double> x(n);
    for (std::size_t i = n; i-- > 0;) {
        double s = b[i];
        for (std::size_t cc = i + 1; cc < n; ++cc) s -= a[i][cc] * x[cc];
        x[i] = s / a[i][i];
    }
    return x;
}

}  // namespace

int subsequence_modulus(const Rational& xi0, const Rational& xi1, ProblemCase c) {
    switch (c) {
        case ProblemCase::BothNonlocal: return static_cast<int>(2 * xi0.den * xi1.den);
        case ProblemCase::LeftDirichlet: return static_cast<int>(2 * xi1.den);
        case ProblemCase::RightDirichlet: return static_cast<int>(2 * xi0.den);
    }
    return 2;
}

std::vector<const DatasetLayer*> select_subsequence(const NodalDataset& dataset,
                                                    const Rational& xi0, const Rational& xi1,
                                                    ProblemCase c) {
    const int modulus = subsequence_modulus(xi0, xi1, c);
    std::vector<const DatasetLayer*> out;
    for (const auto& layer : dataset.layers)
        if (layer.eigen.n > 0 && layer.eigen.n % modulus == 0) out.push_back(&layer);
    std::sort(out.begin(), out.end(), [](const DatasetLayer* a, const DatasetLayer* b) {
        return a->eigen.n < b->eigen.n;
    });
    if (out.empty())
        throw NoAdmissibleIndexError(
            modulus, "dataset has no eigenvalue index that is a multiple of " +
                         std::to_string(modulus) + " (required for this case and ξ)");
    return out;
}

std::vector<LimitSample> limit_samples(const DatasetLayer& layer, ProblemCase c) {
    if (layer.nodes.empty()) throw Error("empty nodal layer");
    const double w = layer_scale(layer.eigen.n, c) * kPi;
    std::vector<LimitSample> out;
    out.reserve(layer.nodes.size());
    for (const auto& node : layer.nodes) {
        // the reference is recomputed from (case, n, j): serialized datasets
        // do not store it
        const double ref = node_reference(c, node.n, node.j);
        out.push_back({node.x, w * w * (node.x - ref), layer.eigen.n});
    }
    return out;
}

LimitCurve::LimitCurve(ProblemCase c, std::vector<LimitSample> fitted, SmoothingConfig cfg)
    : case_(c), samples_(std::move(fitted)), cfg_(cfg) {
    std::sort(samples_.begin(), samples_.end(),
              [](const LimitSample& a, const LimitSample& b) { return a.x < b.x; });
    for (const auto& s : samples_)
        if (layers_.empty() || layers_.back() != s.m) layers_.push_back(s.m);
    std::sort(layers_.begin(), layers_.end());
    layers_.erase(std::unique(layers_.begin(), layers_.end()), layers_.end());

    double ss = 0.0;
    for (const auto& s : samples_) {
        double v, d;
        local_fit(s.x, v, d);
        ss += (s.F - v) * (s.F - v);
    }
    fit_rms_ = std::sqrt(ss / static_cast<double>(samples_.size()));
}

void LimitCurve::local_fit(double x, double& value, double& deriv) const {
    const auto n = samples_.size();
    const std::size_t w = std::min<std::size_t>(static_cast<std::size_t>(cfg_.window), n);
    const int degree = std::min<int>(cfg_.degree, static_cast<int>(w) - 1);

    auto pos = std::lower_bound(samples_.begin(), samples_.end(), x,
                                [](const LimitSample& s, double v) { return s.x < v; }) -
               samples_.begin();
    std::size_t start = static_cast<std::size_t>(std::max<long>(0, pos - static_cast<long>(w / 2)));
    start = std::min(start, n - w);

    // center the fit at the query point: value and derivative are the first
    // two coefficients; scale abscissae for conditioning
    double scale = 0.0;
    for (std::size_t i = start; i < start + w; ++i)
        scale = std::max(scale, std::fabs(samples_[i].x - x));
    if (scale == 0.0) scale = 1.0;

    const std::size_t terms = static_cast<std::size_t>(degree) + 1;
    std::vector<std::vector<double>> ata(terms, std::vector<double>(terms, 0.0));
    std::vector<double> atb(terms, 0.0);
    for (std::size_t i = start; i < start + w; ++i) {
        const double t = (samples_[i].x - x) / scale;
        std::array<double, 8> powers{};
        powers[0] = 1.0;
        for (std::size_t p = 1; p < terms; ++p) powers[p] = powers[p - 1] * t;
        for (std::size_t r = 0; r < terms; ++r) {
            for (std::size_t cc = 0; cc < terms; ++cc) ata[r][cc] += powers[r] * powers[cc];
            atb[r] += powers[r] * samples_[i].F;
        }
    }
    const auto coef = solve_normal(std::move(ata), std::move(atb));
    value = coef[0];
    deriv = terms > 1 ? coef[1] / scale : 0.0;
}

double LimitCurve::value(double x) const {
    double v, d;
    local_fit(x, v, d);
    return v;
}

double LimitCurve::derivative(double x) const {
    double v, d;
    local_fit(x, v, d);
    return d;
}

LimitCurve fit_limit_curve(std::vector<LimitSample> samples, ProblemCase c,
                           SmoothingConfig cfg) {
    std::map<int, std::vector<LimitSample>> by_layer;
    for (const auto& s : samples) by_layer[s.m].push_back(s);

    std::vector<LimitSample> fitted;
    if (cfg.richardson && by_layer.size() >= 2) {
        // extrapolate the two largest layers in 1/m, sample-by-sample on the
        // largest layer's abscissae
        auto it = by_layer.rbegin();
        std::vector<LimitSample> big = it->second;
        ++it;
        std::vector<LimitSample> prev = it->second;
        auto by_x = [](const LimitSample& a, const LimitSample& b) { return a.x < b.x; };
        std::sort(big.begin(), big.end(), by_x);
        std::sort(prev.begin(), prev.end(), by_x);
        const double mb = layer_scale(big.front().m, c);
        const double mp = layer_scale(prev.front().m, c);
        const double gain = mp / (mb - mp);
        fitted.reserve(big.size());
        for (const auto& s : big) {
            const double f_prev = linear_interp(prev, s.x);
            fitted.push_back({s.x, s.F + (s.F - f_prev) * gain, s.m});
        }
    } else {
        fitted = std::move(samples);
        std::sort(fitted.begin(), fitted.end(),
                  [](const LimitSample& a, const LimitSample& b) { return a.x < b.x; });
    }

    if (fitted.size() < 8)
        throw InsufficientCoverageError("need at least 8 limit samples, have " +
                                        std::to_string(fitted.size()));
    double gap = fitted.front().x;  // from 0
    for (std::size_t i = 1; i < fitted.size(); ++i)
        gap = std::max(gap, fitted[i].x - fitted[i - 1].x);
    gap = std::max(gap, 1.0 - fitted.back().x);
    if (!(gap < 0.2))
        throw InsufficientCoverageError("limit samples leave a gap of " + std::to_string(gap) +
                                        " on [0,1] (must be < 0.2)");

    LimitCurve curve(c, std::move(fitted), cfg);
    // keep the full layer list for diagnostics even after extrapolation
    if (cfg.richardson) {
        curve.layers_.clear();
        for (const auto& [m, _] : by_layer) curve.layers_.push_back(m);
    }
    return curve;
}

ReconstructionResult reconstruct(const LimitCurve& curve, ProblemCase c,
                                 std::optional<Rational> xi0, std::optional<Rational> xi1,
                                 int grid_points) {
    if (grid_points < 3 || grid_points % 2 == 0)
        throw Error("reconstruction grid size must be odd and >= 3");

    ReconstructionResult r;
    r.case_tag = c;
    r.xi0 = xi0;
    r.xi1 = xi1;
    r.fit_rms = curve.fit_rms();
    r.layers_used = curve.layers_used();

    const double left = curve.value(0.0);
    const double right = curve.value(1.0);
    switch (c) {
        case ProblemCase::BothNonlocal:
            r.combo_left = left;
            r.combo_right = right;
            break;
        case ProblemCase::LeftDirichlet: r.combo_right = right; break;
        case ProblemCase::RightDirichlet: r.combo_left = left; break;
    }

    r.x.resize(grid_points);
    r.q.resize(grid_points);
    for (int i = 0; i < grid_points; ++i) {
        const double x = static_cast<double>(i) / (grid_points - 1);
        double q = 2.0 * curve.derivative(x);
        switch (c) {
            case ProblemCase::BothNonlocal: q += 2.0 * (left - right); break;
            case ProblemCase::LeftDirichlet: q -= 2.0 * right; break;
            case ProblemCase::RightDirichlet: q += 2.0 * left; break;
        }
        r.x[i] = x;
        r.q[i] = q;
    }

    // zero-mean projection (composite Simpson on the uniform grid)
    const double h = 1.0 / (grid_points - 1);
    double mean = 0.0;
    for (int i = 0; i < grid_points; ++i) {
        const double w = (i == 0 || i == grid_points - 1) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
        mean += w * r.q[i];
    }
    mean *= h / 3.0;
    for (double& q : r.q) q -= mean;
    r.q_mean_subtracted = mean;
    return r;
}

ReconstructionResult resolve_constants(ReconstructionResult result, const KnownValues& known) {
    switch (result.case_tag) {
        case ProblemCase::BothNonlocal: {
            const double cl = result.combo_left.value();
            const double cr = result.combo_right.value();
            if (known.h && known.H) {
                result.h = known.h;
                result.H = known.H;
                result.gamma0 = cl + *known.h;
                result.gamma1 = cr + *known.H;
            } else if (known.gamma0 && known.gamma1) {
                result.gamma0 = known.gamma0;
                result.gamma1 = known.gamma1;
                result.h = *known.gamma0 - cl;
                result.H = *known.gamma1 - cr;
            } else {
                throw ConfigError("case i needs the pair (h,H) or (gamma0,gamma1)");
            }
            break;
        }
        case ProblemCase::LeftDirichlet: {
            if (!result.xi1) throw ConfigError("xi1 required to resolve case ii constants", "xi1");
            const double cr = result.combo_right.value();
            const double s = std::sin(0.5 * kPi * result.xi1->value());  // > 0 on (0,1)
            if (known.H) {
                result.H = known.H;
                result.gamma1 = (cr + *known.H) / s;
            } else if (known.gamma1) {
                result.gamma1 = known.gamma1;
                result.H = *known.gamma1 * s - cr;
            } else {
                throw ConfigError("case ii needs H or gamma1");
            }
            break;
        }
        case ProblemCase::RightDirichlet: {
            if (!result.xi0) throw ConfigError("xi0 required to resolve case iii constants", "xi0");
            const double cl = result.combo_left.value();
            const double cs = std::cos(0.5 * kPi * result.xi0->value());  // > 0 on (0,1)
            if (known.h) {
                result.h = known.h;
                result.gamma0 = (cl + *known.h) / cs;
            } else if (known.gamma0) {
                result.gamma0 = known.gamma0;
                result.h = *known.gamma0 * cs - cl;
            } else {
                throw ConfigError("case iii needs h or gamma0");
            }
            break;
        }
    }
    return result;
}

}  // namespace nodalsl
