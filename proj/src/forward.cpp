#include "nodalsl/forward.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "nodalsl/errors.hpp"
#include "nodalsl/parallel.hpp"

namespace nodalsl {

namespace {

constexpr double kPi = std::numbers::pi;

// Classic Brent root refinement on a bracketing interval.
template <class F>
double brent_root(const F& f, double a, double b, double fa, double fb, double xtol) {
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    double c = a, fc = fa;
    double d = b - a, e = d;
    for (int iter = 0; iter < 200; ++iter) {
        if ((fb > 0.0) == (fc > 0.0)) { c = a; fc = fa; d = e = b - a; }
        if (std::fabs(fc) < std::fabs(fb)) {
            a = b; b = c; c = a;
            fa = fb; fb = fc; fc = fa;
        }
        const double tol1 = 2.0 * std::numeric_limits<double>::epsilon() * std::fabs(b) +
                            0.5 * xtol;
        const double xm = 0.5 * (c - b);
        if (std::fabs(xm) <= tol1 || fb == 0.0) return b;
        if (std::fabs(e) >= tol1 && std::fabs(fa) > std::fabs(fb)) {
            // inverse quadratic / secant
            const double s = fb / fa;
            double p, q;
            if (a == c) {
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                const double r = fb / fc, t = fa / fc;
                p = s * (2.0 * xm * t * (t - r) - (b - a) * (r - 1.0));
                q = (t - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if (p > 0.0) q = -q;
            p = std::fabs(p);
            if (2.0 * p < std::min(3.0 * xm * q - std::fabs(tol1 * q), std::fabs(e * q))) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        b += std::fabs(d) > tol1 ? d : (xm > 0.0 ? tol1 : -tol1);
        fb = f(b);
        if (fb == 0.0) return b;
    }
    return b;
}

BoundaryForms forms_from_states(const ProblemSpec& p, const BasisState& at0,
                                const BasisState& at_xi0, const BasisState& at_xi1,
                                const BasisState& at1) {
    BoundaryForms f{};
    if (p.case_tag == ProblemCase::LeftDirichlet) {
        f.uc = at0.c;  // = 1
        f.us = at0.s;  // = 0
    } else {
        const double h = p.h.value();
        f.uc = at0.cp + h * at0.c - p.gamma0 * at_xi0.c;
        f.us = at0.sp + h * at0.s - p.gamma0 * at_xi0.s;
    }
    if (p.case_tag == ProblemCase::RightDirichlet) {
        f.vc = at1.c;
        f.vs = at1.s;
    } else {
        const double bigh = p.H.value();
        f.vc = at1.cp + bigh * at1.c - p.gamma1 * at_xi1.c;
        f.vs = at1.sp + bigh * at1.s - p.gamma1 * at_xi1.s;
    }
    return f;
}

}  // namespace

BoundaryForms boundary_forms(const ProblemSpec& problem, const BasisSolutions& basis) {
    const auto& grid = basis.grid();
    const BasisState& at0 = basis.at(0);
    const BasisState& at1 = basis.at(grid.size() - 1);
    const BasisState& at_xi0 = basis.at(basis.index_of(problem.xi0.value()));
    const BasisState& at_xi1 = basis.at(basis.index_of(problem.xi1.value()));
    return forms_from_states(problem, at0, at_xi0, at_xi1, at1);
}

double char_delta(const ProblemSpec& problem, double lambda, const StepControl& sc) {
    if (lambda < 0.0) throw SolverError("char_delta requires lambda >= 0 (real spectrum)");
    const auto basis = integrate_basis(problem, std::sqrt(lambda), sc);
    const auto f = boundary_forms(problem, basis);
    return f.uc * f.vs - f.us * f.vc;
}

EigenvalueSeed kappa_seed(const ProblemSpec& problem, int n) {
    if (n < 1) throw SolverError("eigenvalue seed needs n >= 1");
    const double nd = static_cast<double>(n);
    const double sign = (n % 2 == 0) ? 1.0 : -1.0;
    const double x0 = problem.xi0.value(), x1 = problem.xi1.value();
    EigenvalueSeed out{};
    switch (problem.case_tag) {
        case ProblemCase::BothNonlocal:
            out.k0 = nd * kPi;
            out.kappa = problem.H.value() - problem.h.value() -
                        sign * (problem.gamma1 * std::cos(nd * kPi * x1) -
                                problem.gamma0 * std::cos(nd * kPi * (1.0 - x0)));
            break;
        case ProblemCase::LeftDirichlet:
            out.k0 = (nd + 0.5) * kPi;
            out.kappa = problem.H.value() -
                        sign * problem.gamma1 * std::sin((nd + 0.5) * kPi * x1);
            break;
        case ProblemCase::RightDirichlet:
            out.k0 = (nd + 0.5) * kPi;
            out.kappa = -problem.h.value() +
                        problem.gamma0 * std::cos((nd + 0.5) * kPi * x0);
            break;
    }
    out.seed = out.k0 + out.kappa / (nd * kPi);
    return out;
}

SpectralPoint find_eigenvalue(const ProblemSpec& problem, int n, const SolverOptions& opts) {
    const EigenvalueSeed seed = kappa_seed(problem, n);

    auto delta_at_k = [&](double k) { return char_delta(problem, k * k, opts.step); };

    constexpr int kScanIntervals = 16;
    for (const double width : {kPi / 4.0, kPi / 2.0}) {
        const double lo = std::max(seed.seed - width, 1e-6);
        const double hi = seed.seed + width;
        double ks[kScanIntervals + 1], ds[kScanIntervals + 1];
        double scale = 0.0;
        for (int i = 0; i <= kScanIntervals; ++i) {
            ks[i] = lo + (hi - lo) * static_cast<double>(i) / kScanIntervals;
            ds[i] = delta_at_k(ks[i]);
            scale = std::max(scale, std::fabs(ds[i]));
        }

        std::vector<double> roots;
        const double xtol = std::max(1e-13, 8.0 * std::numeric_limits<double>::epsilon() *
                                                 seed.seed);
        for (int i = 0; i <= kScanIntervals; ++i) {
            if (ds[i] == 0.0) {
                roots.push_back(ks[i]);
            } else if (i < kScanIntervals && ds[i] * ds[i + 1] < 0.0) {
                roots.push_back(brent_root(delta_at_k, ks[i], ks[i + 1], ds[i], ds[i + 1], xtol));
            }
        }
        if (roots.empty()) continue;

        std::sort(roots.begin(), roots.end());
        const auto nearest = std::min_element(roots.begin(), roots.end(), [&](double a, double b) {
            return std::fabs(a - seed.seed) < std::fabs(b - seed.seed);
        });

        SpectralPoint sp;
        sp.n = n;
        sp.k = *nearest;
        sp.lambda = sp.k * sp.k;
        sp.seed = seed.seed;
        sp.best_effort = n < opts.n_min;
        sp.multiple_roots = roots.size() > 1;
        for (double r : roots)
            if (r != *nearest) sp.candidates.push_back(r);

        const double resid = std::fabs(delta_at_k(sp.k));
        sp.residual = scale > 0.0 ? resid / scale : resid;
        if (!(sp.residual <= opts.root_rtol))
            throw SolverError("eigenvalue refinement stalled at n=" + std::to_string(n) +
                              " (relative residual " + std::to_string(sp.residual) + ")");
        return sp;
    }
    throw NoSignChangeError(n, seed.seed,
                            "no sign change of the characteristic function near seed " +
                                std::to_string(seed.seed) + " for n=" + std::to_string(n));
}

Eigenfunction::Eigenfunction(const ProblemSpec& problem, const SpectralPoint& sp,
                             const SolverOptions& opts)
    : basis_(integrate_basis(problem, sp.k, opts.step)),
      forms_(boundary_forms(problem, basis_)) {}

double Eigenfunction::operator()(double x) const {
    const BasisState st = basis_.eval(x);
    return forms_.us * st.c - forms_.uc * st.s;
}

double Eigenfunction::derivative(double x) const {
    const BasisState st = basis_.eval(x);
    return forms_.us * st.cp - forms_.uc * st.sp;
}

double eigenfunction_value(const ProblemSpec& problem, const SpectralPoint& sp, double x,
                           const SolverOptions& opts) {
    return Eigenfunction(problem, sp, opts)(x);
}

double node_reference(ProblemCase c, int n, int j) {
    const double nd = static_cast<double>(n), jd = static_cast<double>(j);
    switch (c) {
        case ProblemCase::BothNonlocal: return (jd + 0.5) / nd;
        case ProblemCase::LeftDirichlet: return jd / (nd + 0.5);
        case ProblemCase::RightDirichlet: return (jd + 0.5) / (nd + 0.5);
    }
    return 0.0;
}

std::vector<NodalPoint> find_nodes(const ProblemSpec& problem, const SpectralPoint& sp,
                                   const SolverOptions& opts) {
    // guarantee the sign-change scan resolution 1/(20n) even if the basis
    // step control is coarser
    SolverOptions local = opts;
    local.step.h_max = std::min(opts.step.h_max, 1.0 / (20.0 * std::max(sp.n, 1)));
    const Eigenfunction phi(problem, sp, local);

    const auto& grid = phi.basis().grid();
    const std::size_t npts = grid.size();
    std::vector<double> values(npts);
    for (std::size_t i = 0; i < npts; ++i) {
        const BasisState& st = phi.basis().at(i);
        values[i] = phi.forms().us * st.c - phi.forms().uc * st.s;
    }

    // The Dirichlet cases have a boundary zero of φ (φ(0) = 0 or φ(1) = 0 up
    // to the eigenvalue residual) which is not an interior node; real nodes
    // never come closer to an endpoint than about half a reference slot.
    constexpr double kBoundaryBand = 1e-7;

    std::vector<double> zeros;
    for (std::size_t i = 0; i < npts; ++i) {
        if (values[i] == 0.0) {
            if (grid[i] > kBoundaryBand && grid[i] < 1.0 - kBoundaryBand)
                zeros.push_back(grid[i]);
            continue;
        }
        if (i + 1 < npts && values[i + 1] != 0.0 && values[i] * values[i + 1] < 0.0) {
            double a = grid[i], b = grid[i + 1];
            double fa = values[i];
            // bisection to the node tolerance, then a Newton polish
            while (b - a > opts.node_tol) {
                const double mid = 0.5 * (a + b);
                const double fm = phi(mid);
                if (fm == 0.0) { a = b = mid; break; }
                if ((fm > 0.0) == (fa > 0.0)) { a = mid; fa = fm; }
                else b = mid;
            }
            double x = 0.5 * (a + b);
            const double dphi = phi.derivative(x);
            if (dphi != 0.0) {
                const double xn = x - phi(x) / dphi;
                if (xn > grid[i] && xn < grid[i + 1]) x = xn;
            }
            zeros.push_back(x);
        }
    }

    std::vector<NodalPoint> nodes;
    nodes.reserve(zeros.size());
    for (double x : zeros) {
        double slot;
        switch (problem.case_tag) {
            case ProblemCase::BothNonlocal: slot = x * sp.n - 0.5; break;
            case ProblemCase::LeftDirichlet: slot = x * (sp.n + 0.5); break;
            case ProblemCase::RightDirichlet: slot = x * (sp.n + 0.5) - 0.5; break;
            default: slot = 0.0; break;
        }
        const int j = static_cast<int>(std::lround(slot));
        nodes.push_back({sp.n, j, x, node_reference(problem.case_tag, sp.n, j)});
    }

    for (std::size_t i = 1; i < nodes.size(); ++i) {
        if (nodes[i].j != nodes[i - 1].j + 1)
            throw AmbiguousIndexingError(
                sp.n, "node indexing not one-to-one onto a contiguous range at n=" +
                          std::to_string(sp.n) + " (j " + std::to_string(nodes[i - 1].j) +
                          " then " + std::to_string(nodes[i].j) + ")");
    }
    return nodes;
}

const DatasetLayer* NodalDataset::layer(int n) const {
    for (const auto& l : layers)
        if (l.eigen.n == n) return &l;
    return nullptr;
}

std::size_t NodalDataset::total_nodes() const {
    std::size_t t = 0;
    for (const auto& l : layers) t += l.nodes.size();
    return t;
}

NodalDataset generate_dataset(const ProblemSpec& problem, std::vector<int> n_list,
                              const SolverOptions& opts) {
    if (n_list.empty()) throw SolverError("empty index list");
    std::sort(n_list.begin(), n_list.end());
    n_list.erase(std::unique(n_list.begin(), n_list.end()), n_list.end());
    if (n_list.front() < opts.n_min)
        throw SolverError("index " + std::to_string(n_list.front()) + " below n_min=" +
                          std::to_string(opts.n_min) +
                          " (low indices have no asymptotic guarantees)");

    NodalDataset ds;
    ds.layers.resize(n_list.size());
    parallel_for(n_list.size(), [&](std::size_t i) {
        const int n = n_list[i];
        DatasetLayer layer;
        layer.eigen = find_eigenvalue(problem, n, opts);
        layer.nodes = find_nodes(problem, layer.eigen, opts);
        if (layer.nodes.empty())
            throw SolverError("no nodal points found for n=" + std::to_string(n));
        ds.layers[i] = std::move(layer);
    });
    return ds;
}

}  // namespace nodalsl
