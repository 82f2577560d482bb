#pragma once

#include <string>

#include "nodalsl/potential.hpp"
#include "nodalsl/rational.hpp"

namespace nodalsl {

/// One endpoint coefficient: a finite value, or the Dirichlet degeneration
/// (the "infinite" coefficient that collapses the condition to y = 0).
class BoundaryParam {
public:
    BoundaryParam() = default;

    static BoundaryParam finite(double v);
    static BoundaryParam dirichlet() {
        BoundaryParam b;
        b.dirichlet_ = true;
        return b;
    }

    [[nodiscard]] bool is_dirichlet() const { return dirichlet_; }
    [[nodiscard]] double value() const;  // throws if Dirichlet

    [[nodiscard]] std::string str() const;

private:
    bool dirichlet_ = false;
    double value_ = 0.0;
};

/// Which endpoint carries a Dirichlet condition:
///   BothNonlocal   -- "case i",   h, H finite;
///   LeftDirichlet  -- "case ii",  y(0) = 0;
///   RightDirichlet -- "case iii", y(1) = 0.
enum class ProblemCase { BothNonlocal, LeftDirichlet, RightDirichlet };

const char* case_name(ProblemCase c);           // "i" / "ii" / "iii"
ProblemCase parse_case(const std::string& s);   // accepts i/ii/iii (also 1/2/3)

/// Full problem data: -y'' + q y = λ y on (0,1) with
///   y'(0) + h y(0) - γ₀ y(ξ₀) = 0   (or y(0) = 0 when h is Dirichlet)
///   y'(1) + H y(1) - γ₁ y(ξ₁) = 0   (or y(1) = 0 when H is Dirichlet).
/// The stored potential is mean-normalized (∫₀¹ q = 0); the subtracted mean
/// is kept as metadata.
struct ProblemSpec {
    Potential q;          // zero-mean
    double q_mean = 0.0;  // subtracted from the raw potential
    BoundaryParam h, H;
    double gamma0 = 0.0, gamma1 = 0.0;
    Rational xi0{1, 2}, xi1{1, 2};
    ProblemCase case_tag = ProblemCase::BothNonlocal;

    /// Normalizes the potential, derives the case tag and validates the
    /// structural invariants (ξ in (0,1), not both endpoints Dirichlet).
    /// γ = 0 is tolerated here; the config layer rejects it, but degenerate
    /// separated problems are useful as closed-form oracles.
    static ProblemSpec make(const Potential& q_raw, BoundaryParam h, BoundaryParam H,
                            double gamma0, double gamma1, Rational xi0, Rational xi1);
};

}  // namespace nodalsl
