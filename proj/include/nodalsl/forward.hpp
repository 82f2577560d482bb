#pragma once

#include <vector>

#include "nodalsl/basis.hpp"

namespace nodalsl {

/// Tolerances and switches for the eigenvalue/node solver.  Defaults are the
/// shipped values; everything is config-overridable.
struct SolverOptions {
    StepControl step;
    double root_rtol = 1e-10;  // |Δ| at the root, relative to the bracket scale
    double node_tol = 1e-12;   // bisection interval width for nodal points
    int n_min = 5;             // below this index results are best-effort
};

/// The two boundary forms applied to the fundamental solutions.
struct BoundaryForms {
    double uc, us;  // U(C), U(S)
    double vc, vs;  // V(C), V(S)
};

/// U(y) = y'(0) + h y(0) - γ₀ y(ξ₀) and V(y) = y'(1) + H y(1) - γ₁ y(ξ₁),
/// degenerating to U(y) = y(0) / V(y) = y(1) for the Dirichlet cases.
BoundaryForms boundary_forms(const ProblemSpec& problem, const BasisSolutions& basis);

/// Characteristic function Δ(λ) = U(C)V(S) - U(S)V(C); its zeros are the
/// eigenvalues.  λ must be >= 0 (real k only).
double char_delta(const ProblemSpec& problem, double lambda, const StepControl& sc = {});

/// First-order eigenvalue approximation around k⁰ₙ.
struct EigenvalueSeed {
    double k0;     // nπ or (n+½)π depending on the case
    double kappa;  // the O(1) correction coefficient
    double seed;   // k0 + kappa/(nπ)
};

/// Seed for the n-th eigenvalue (n >= 1).  Assumes the stored potential is
/// zero-mean, so the ∫q term of the correction vanishes.
EigenvalueSeed kappa_seed(const ProblemSpec& problem, int n);

struct SpectralPoint {
    int n = 0;
    double k = 0.0;       // √λₙ
    double lambda = 0.0;  // λₙ
    double seed = 0.0;
    double residual = 0.0;          // |Δ(λₙ)| relative to the bracket scale
    bool best_effort = false;       // located with n < n_min
    bool multiple_roots = false;    // more than one root in the scan window
    std::vector<double> candidates;  // the other k-roots seen in the window
};

/// Locate the eigenvalue nearest the Lemma-style seed: sign-change scan over
/// [seed - π/4, seed + π/4] (widened once to ±π/2), then bracketing
/// refinement.  Throws NoSignChangeError when no bracket exists.
SpectralPoint find_eigenvalue(const ProblemSpec& problem, int n,
                              const SolverOptions& opts = {});

/// Eigenfunction φ(x,λₙ) = U(S)·C(x,λₙ) - U(C)·S(x,λₙ), backed by cached
/// dense output of the basis solutions.
class Eigenfunction {
public:
    Eigenfunction(const ProblemSpec& problem, const SpectralPoint& sp,
                  const SolverOptions& opts = {});

    double operator()(double x) const;
    [[nodiscard]] double derivative(double x) const;

    [[nodiscard]] const BasisSolutions& basis() const { return basis_; }
    [[nodiscard]] const BoundaryForms& forms() const { return forms_; }

private:
    BasisSolutions basis_;
    BoundaryForms forms_;
};

/// One-off evaluation of φ(x,λₙ); prefer the Eigenfunction class when
/// evaluating at many x.
double eigenfunction_value(const ProblemSpec& problem, const SpectralPoint& sp, double x,
                           const SolverOptions& opts = {});

/// An interior zero of φ(·,λₙ), indexed by the nearest reference position.
struct NodalPoint {
    int n = 0;
    int j = 0;
    double x = 0.0;
    double ref = 0.0;  // reference position for this (n, j)
};

/// Leading-order node position: (j+½)/n, j/(n+½) or (j+½)/(n+½) per case.
double node_reference(ProblemCase c, int n, int j);

/// All zeros of φ(·,λₙ) in (0,1), found by sign-change scan at resolution
/// at least 1/(20n) and bisection to node_tol; sorted by x; j assigned by
/// nearest reference position.  Throws AmbiguousIndexingError if that
/// assignment is not one-to-one onto a contiguous range.
std::vector<NodalPoint> find_nodes(const ProblemSpec& problem, const SpectralPoint& sp,
                                   const SolverOptions& opts = {});

/// Everything computed for one eigenvalue index.
struct DatasetLayer {
    SpectralPoint eigen;
    std::vector<NodalPoint> nodes;
};

/// Nodal points for a set of indices, ordered by (n, j).
struct NodalDataset {
    std::vector<DatasetLayer> layers;

    [[nodiscard]] const DatasetLayer* layer(int n) const;
    [[nodiscard]] std::size_t total_nodes() const;
};

/// Compute layers for every index in n_list (deduplicated, ascending).
/// Indices below n_min are rejected.  Layers are computed in parallel; the
/// result is a deterministic function of (problem, n_list, opts).
NodalDataset generate_dataset(const ProblemSpec& problem, std::vector<int> n_list,
                              const SolverOptions& opts = {});

}  // namespace nodalsl
