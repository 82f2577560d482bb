#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "nodalsl/expr.hpp"

namespace nodalsl {

struct SampledGrid;

/// The potential q(x) on [0,1].  Either expression-backed or a uniform grid
/// of samples with piecewise-cubic (Hermite) interpolation, plus a constant
/// offset so mean normalization never mutates the underlying data.
/// Values are immutable after construction; copies share storage.
class Potential {
public:
    /// Identically zero.
    Potential() = default;

    static Potential expression(expr::Ast ast);
    static Potential expression(const std::string& source);

    /// Samples of q at i/(n-1), i = 0..n-1, n >= 4.
    static Potential samples(std::vector<double> values);

    /// Evaluate q(x) - offset.
    double operator()(double x) const;

    /// ∫₀ˣ q(t) dt, absolute error <= 1e-10 for continuously differentiable q
    /// (exact up to roundoff for sampled potentials).
    [[nodiscard]] double integral_to(double x) const;

    /// Potential with `delta` subtracted from every value.
    [[nodiscard]] Potential shifted(double delta) const;

    [[nodiscard]] double offset() const { return offset_; }
    [[nodiscard]] bool is_sampled() const { return grid_ != nullptr; }

    /// Source echo for metadata files: the expression text, or "samples:<n>".
    [[nodiscard]] std::string describe() const;

private:
    expr::Ast ast_;
    std::shared_ptr<const SampledGrid> grid_;
    double offset_ = 0.0;
};

/// Splits q_raw into a zero-mean potential and its mean: q = q_raw - mean
/// with mean = ∫₀¹ q_raw.  Throws if q_raw is non-finite anywhere on [0,1].
std::pair<Potential, double> normalize_potential(const Potential& q_raw);

/// Q(x) = ½ ∫₀ˣ q(t) dt.
double half_integral_Q(const Potential& q, double x);

}  // namespace nodalsl
