#pragma once

#include <optional>
#include <vector>

#include "nodalsl/forward.hpp"

namespace nodalsl {

/// One scaled nodal residual: F ≈ limit curve at x, computed from a layer of
/// index m.
struct LimitSample {
    double x = 0.0;
    double F = 0.0;
    int m = 0;
};

struct SmoothingConfig {
    int window = 7;           // points per local least-squares fit
    int degree = 3;           // local polynomial degree
    bool richardson = true;   // extrapolate in 1/m when >= 2 layers are given
};

/// Modulus of the admissible index subsequence: 2 r₀ r₁ (case i), 2 r₁
/// (case ii) or 2 r₀ (case iii), where r are the ξ denominators.
int subsequence_modulus(const Rational& xi0, const Rational& xi1, ProblemCase c);

/// Layers of the dataset whose index is a multiple of the subsequence
/// modulus, ascending.  Throws NoAdmissibleIndexError when there are none.
std::vector<const DatasetLayer*> select_subsequence(const NodalDataset& dataset,
                                                    const Rational& xi0, const Rational& xi1,
                                                    ProblemCase c);

/// Scaled residuals of one layer: F = (mπ)²(x - ref) in case i and
/// ((m+½)π)²(x - ref) in cases ii/iii, paired with x itself.
std::vector<LimitSample> limit_samples(const DatasetLayer& layer, ProblemCase c);

/// Smoothed limit curve: local least-squares polynomials over the samples,
/// evaluable with derivative on all of [0,1] (endpoint values come from the
/// boundary windows).
class LimitCurve {
public:
    LimitCurve(ProblemCase c, std::vector<LimitSample> fitted, SmoothingConfig cfg);

    [[nodiscard]] double value(double x) const;
    [[nodiscard]] double derivative(double x) const;

    [[nodiscard]] ProblemCase case_tag() const { return case_; }
    [[nodiscard]] const std::vector<LimitSample>& samples() const { return samples_; }
    [[nodiscard]] const std::vector<int>& layers_used() const { return layers_; }
    [[nodiscard]] double fit_rms() const { return fit_rms_; }

private:
    friend LimitCurve fit_limit_curve(std::vector<LimitSample>, ProblemCase, SmoothingConfig);
    ProblemCase case_;
    std::vector<LimitSample> samples_;  // sorted by x
    std::vector<int> layers_;
    SmoothingConfig cfg_;
    double fit_rms_ = 0.0;

    void local_fit(double x, double& value, double& deriv) const;
};

/// Build the limit curve from samples of one or more m-layers.  With two or
/// more layers and cfg.richardson, a per-x extrapolation in 1/m of the two
/// largest layers precedes fitting.  Preconditions: at least 8 samples and
/// no gap of 0.2 or wider across [0,1].
LimitCurve fit_limit_curve(std::vector<LimitSample> samples, ProblemCase c,
                           SmoothingConfig cfg = {});

/// Reconstructed potential and boundary-constant combinations.
struct ReconstructionResult {
    ProblemCase case_tag = ProblemCase::BothNonlocal;
    std::optional<Rational> xi0, xi1;

    std::vector<double> x;  // uniform grid
    std::vector<double> q;  // zero-mean reconstruction
    double q_mean_subtracted = 0.0;

    // combination constants recoverable without side information
    std::optional<double> combo_left;   // γ₀ - h  (case i)  or γ₀cos(πξ₀/2) - h (case iii)
    std::optional<double> combo_right;  // γ₁ - H  (case i)  or γ₁sin(πξ₁/2) - H (case ii)

    // individual constants, present after resolve_constants
    std::optional<double> h, H, gamma0, gamma1;

    double fit_rms = 0.0;
    std::vector<int> layers_used;
};

/// q from the case formula (q = 2(curve' + curve(0) - curve(1)), etc.),
/// projected to zero mean, on a uniform grid.
ReconstructionResult reconstruct(const LimitCurve& curve, ProblemCase c,
                                 std::optional<Rational> xi0, std::optional<Rational> xi1,
                                 int grid_points = 201);

/// Side information for separating the combination constants.
struct KnownValues {
    std::optional<double> h, H, gamma0, gamma1;
};

/// Fill in the individual boundary constants from the combinations:
/// case i needs the pair (h,H) or (γ₀,γ₁); case ii needs H or γ₁; case iii
/// needs h or γ₀.  Throws ConfigError on a case/known mismatch.
ReconstructionResult resolve_constants(ReconstructionResult result, const KnownValues& known);

}  // namespace nodalsl
