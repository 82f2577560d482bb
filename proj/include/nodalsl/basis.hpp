#pragma once

#include <span>
#include <vector>

#include "nodalsl/potential.hpp"
#include "nodalsl/problem.hpp"

namespace nodalsl {

/// Step control for the basis integrator: the grid step never exceeds
/// min(h_max, osc_c / k), keeping a fixed number of points per wavelength
/// for oscillatory solutions.
struct StepControl {
    double h_max = 1e-3;
    double osc_c = 0.1;
    double wronskian_tol = 1e-8;
};

/// Values and first derivatives of the two fundamental solutions at one x.
struct BasisState {
    double c = 1.0, cp = 0.0;  // C(x), C'(x):  C(0)=1, C'(0)=0
    double s = 0.0, sp = 1.0;  // S(x), S'(x):  S(0)=0, S'(0)=1
};

/// Dense output of C(x,λ), S(x,λ) and first derivatives on a grid of [0,1]
/// that contains every requested interior point (the coupling points ξ)
/// exactly.  Immutable after construction; safe to share across threads.
class BasisSolutions {
public:
    [[nodiscard]] double k() const { return k_; }
    [[nodiscard]] double lambda() const { return k_ * k_; }
    [[nodiscard]] const std::vector<double>& grid() const { return grid_; }
    [[nodiscard]] const BasisState& at(std::size_t i) const { return states_[i]; }
    [[nodiscard]] std::size_t size() const { return grid_.size(); }

    /// Index of an exact grid point (used for ξ and the endpoints); throws
    /// if x is not on the grid.
    [[nodiscard]] std::size_t index_of(double x) const;

    /// State at arbitrary x in [0,1]: one local integrator step from the
    /// nearest grid point at or below x.  Deterministic.
    [[nodiscard]] BasisState eval(double x) const;

    /// max over the grid of |C S' - C' S - 1|.
    [[nodiscard]] double wronskian_deviation() const;

private:
    friend BasisSolutions integrate_basis(const Potential&, double, const StepControl&,
                                          std::span<const double>);
    Potential q_;
    double k_ = 0.0;
    std::vector<double> grid_;
    std::vector<BasisState> states_;
};

/// Integrate -y'' + q y = k² y from x=0 with the two canonical initial
/// conditions simultaneously, by a fixed-step explicit Runge-Kutta method of
/// order 8 (Dormand-Prince 8(5,3) advance formula).  `interior_points` are
/// inserted into the grid exactly.  Throws SolverError if the Wronskian
/// drifts beyond tolerance.
BasisSolutions integrate_basis(const Potential& q, double k, const StepControl& sc = {},
                               std::span<const double> interior_points = {});

/// Convenience overload: grid contains ξ₀ and ξ₁ of the problem.
BasisSolutions integrate_basis(const ProblemSpec& problem, double k,
                               const StepControl& sc = {});

/// Leading terms of the large-k expansion of C(x,λ):
///   cos kx + (sin kx / k) Q(x) + (cos kx / k²) q₁(x),
/// with Q(x) = ½∫₀ˣ q and q₁(x) = (q(x)-q(0))/4 - (∫₀ˣ q)²/8.  Real k only.
double asymptotic_C(const Potential& q, double x, double k);

/// Leading terms of the large-k expansion of S(x,λ):
///   sin kx / k - (cos kx / k²) Q(x).
double asymptotic_S(const Potential& q, double x, double k);

}  // namespace nodalsl
