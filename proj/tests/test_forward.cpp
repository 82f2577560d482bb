#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "nodalsl/forward.hpp"
#include "oracles.hpp"

using namespace nodalsl;
namespace {
constexpr double pi = std::numbers::pi;

ProblemSpec trivial_case_i() {
    return ProblemSpec::make(Potential{}, BoundaryParam::finite(0.0), BoundaryParam::finite(0.0),
                             0.0, 0.0, Rational{2, 5}, Rational{6, 7});
}

ProblemSpec trivial_case_ii() {
    return ProblemSpec::make(Potential{}, BoundaryParam::dirichlet(), BoundaryParam::finite(0.0),
                             0.0, 0.0, Rational{1, 2}, Rational{2, 5});
}

ProblemSpec q0_case_i_nonlocal() {
    return ProblemSpec::make(Potential{}, BoundaryParam::finite(1.0), BoundaryParam::finite(2.0),
                             3.0, 6.0, Rational{2, 5}, Rational{6, 7});
}

}  // namespace

TEST_CASE("boundary forms in the three cases") {
    {
        const auto p = trivial_case_i();
        const auto b = integrate_basis(p, 2.0);
        const auto f = boundary_forms(p, b);
        CHECK(f.uc == 0.0);  // C'(0) + 0 - 0
        CHECK(f.us == 1.0);  // S'(0)
    }
    {
        const auto p = q0_case_i_nonlocal();
        const double k = 3.0;
        const auto f = boundary_forms(p, integrate_basis(p, k));
        CHECK(f.uc == doctest::Approx(1.0 - 3.0 * std::cos(k * 0.4)).epsilon(1e-9));
        CHECK(f.us == doctest::Approx(1.0 - 3.0 * std::sin(k * 0.4) / k).epsilon(1e-9));
    }
    {
        const auto p = oracles::example2_problem();
        const auto f = boundary_forms(p, integrate_basis(p, 7.7));
        CHECK(f.uc == 1.0);  // C(0)
        CHECK(f.us == 0.0);  // S(0)
    }
}

TEST_CASE("characteristic function against closed forms") {
    {
        const auto p = trivial_case_i();
        CHECK(std::fabs(char_delta(p, pi * pi)) <= 1e-8);  // k sin k at k = π
    }
    {
        const auto p = q0_case_i_nonlocal();
        for (double k : {2.3, 9.0, 31.4, 100.0}) {
            const double got = char_delta(p, k * k);
            const double want = oracles::delta_q0(p, k);
            CHECK(got == doctest::Approx(want).epsilon(1e-8));
        }
    }
    {
        // case ii with γ₁=0, H=0: Δ = V(S) = cos k
        const auto p = trivial_case_ii();
        CHECK(std::fabs(char_delta(p, (pi / 2.0) * (pi / 2.0))) <= 1e-8);
        CHECK(char_delta(p, 4.0) == doctest::Approx(std::cos(2.0)).epsilon(1e-9));
    }
    CHECK_THROWS_AS((void)char_delta(trivial_case_i(), -1.0), SolverError);
}

TEST_CASE("eigenvalue seeds from the asymptotic correction") {
    {
        // h = H, γ = 0: κ = 0 and the seed is exactly nπ
        const auto p = ProblemSpec::make(Potential{}, BoundaryParam::finite(1.5),
                                         BoundaryParam::finite(1.5), 0.0, 0.0, Rational{1, 3},
                                         Rational{1, 2});
        const auto s = kappa_seed(p, 7);
        CHECK(s.kappa == 0.0);
        CHECK(s.seed == 7.0 * pi);
    }
    {
        // worked case-i example at n = 70: κ = 1 - (6 cos 60π - 3 cos 42π) = -2
        const auto p = q0_case_i_nonlocal();
        const auto s = kappa_seed(p, 70);
        CHECK(s.k0 == doctest::Approx(70.0 * pi));
        CHECK(s.kappa == doctest::Approx(-2.0).epsilon(1e-9));
        CHECK(s.seed == doctest::Approx(70.0 * pi - 2.0 / (70.0 * pi)).epsilon(1e-12));
    }
    {
        // case ii, H=2, γ₁=3, ξ₁=2/5, n=10: κ = 2 - 3 sin(4.2π) = 2 - 3 sin(0.2π)
        const auto p = ProblemSpec::make(Potential{}, BoundaryParam::dirichlet(),
                                         BoundaryParam::finite(2.0), 0.0, 3.0, Rational{1, 2},
                                         Rational{2, 5});
        const auto s = kappa_seed(p, 10);
        CHECK(s.k0 == doctest::Approx(10.5 * pi));
        CHECK(s.kappa == doctest::Approx(2.0 - 3.0 * std::sin(0.2 * pi)).epsilon(1e-12));
    }
    CHECK_THROWS_AS((void)kappa_seed(trivial_case_i(), 0), SolverError);
}

TEST_CASE("eigenvalues of the separated constant-coefficient problem are exact") {
    const auto p = trivial_case_i();
    for (int n : {5, 9, 20}) {
        const auto sp = find_eigenvalue(p, n);
        CHECK(sp.k == doctest::Approx(n * pi).epsilon(1e-10));
        CHECK(sp.residual <= 1e-10);
        CHECK_FALSE(sp.best_effort);
    }
    const auto low = find_eigenvalue(p, 2);  // below n_min: flagged, still fine here
    CHECK(low.best_effort);
    CHECK(low.k == doctest::Approx(2.0 * pi).epsilon(1e-9));
}

TEST_CASE("eigenvalues match the closed-form characteristic roots") {
    const auto p = q0_case_i_nonlocal();
    for (int n : {5, 12, 40}) {
        const auto sp = find_eigenvalue(p, n);
        const auto roots =
            oracles::delta_q0_roots(p, sp.seed - pi / 2.0, sp.seed + pi / 2.0, 0.02);
        REQUIRE(!roots.empty());
        const double nearest =
            *std::min_element(roots.begin(), roots.end(), [&](double a, double b) {
                return std::fabs(a - sp.k) < std::fabs(b - sp.k);
            });
        CHECK(sp.k == doctest::Approx(nearest).epsilon(1e-8));
    }
}

TEST_CASE("seed gap shrinks like o(1/n) for the worked problem") {
    const auto p = oracles::example1_problem();
    for (int n : {40, 60, 80}) {
        const auto sp = find_eigenvalue(p, n);
        CHECK(n * std::fabs(sp.k - sp.seed) < 0.05);
    }
}

TEST_CASE("eigenfunctions reduce to cosines and sines in the degenerate cases") {
    {
        const auto p = trivial_case_i();
        const auto sp = find_eigenvalue(p, 8);
        const Eigenfunction phi(p, sp);
        const double scale = phi(0.0);
        REQUIRE(scale != 0.0);
        for (double x : {0.1, 0.37, 0.62, 0.95})
            CHECK(phi(x) / scale == doctest::Approx(std::cos(8.0 * pi * x)).epsilon(1e-8));
    }
    {
        const auto p = trivial_case_ii();
        const auto sp = find_eigenvalue(p, 6);  // k = 6.5π
        CHECK(sp.k == doctest::Approx(6.5 * pi).epsilon(1e-10));
        const Eigenfunction phi(p, sp);
        // φ = -S here, so -φ·k ≈ sin(kx)
        for (double x : {0.2, 0.5, 0.83})
            CHECK(-phi(x) * sp.k == doctest::Approx(std::sin(sp.k * x)).epsilon(1e-8));
    }
}

TEST_CASE("eigenfunction satisfies the right boundary form") {
    const auto p = oracles::example1_problem();
    const auto sp = find_eigenvalue(p, 12);
    const Eigenfunction phi(p, sp);
    // V(φ) = φ'(1) + H φ(1) - γ₁ φ(ξ₁), assembled from point values, vanishes
    const double vphi = phi.derivative(1.0) + 2.0 * phi(1.0) - 6.0 * phi(p.xi1.value());
    CHECK(std::fabs(vphi) <= 1e-6 * sp.k);
}

TEST_CASE("normalized eigenfunction stays near the leading cosine") {
    const auto p = oracles::example1_problem();
    for (int n : {40, 80}) {
        const auto sp = find_eigenvalue(p, n);
        const Eigenfunction phi(p, sp);
        const double scale = phi(0.0);
        double dist = 0.0;
        for (int i = 0; i <= 200; ++i) {
            const double x = i / 200.0;
            dist = std::max(dist, std::fabs(phi(x) / scale - std::cos(sp.k * x)));
        }
        CHECK(n * dist < 5.0);  // O(1/n) with a modest constant
    }
}

TEST_CASE("nodes of the degenerate problems sit at the reference points") {
    {
        const auto p = trivial_case_i();
        const auto sp = find_eigenvalue(p, 10);
        const auto nodes = find_nodes(p, sp);
        REQUIRE(nodes.size() == 10);  // zeros of cos(10πx) in (0,1)
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            CHECK(nodes[i].j == static_cast<int>(i));
            CHECK(nodes[i].x == doctest::Approx((i + 0.5) / 10.0).epsilon(1e-12));
            CHECK(nodes[i].ref == doctest::Approx((i + 0.5) / 10.0));
        }
    }
    {
        const auto p = trivial_case_ii();
        const auto sp = find_eigenvalue(p, 10);
        const auto nodes = find_nodes(p, sp);
        REQUIRE(nodes.size() == 10);  // zeros of sin(10.5πx) in (0,1)
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            CHECK(nodes[i].j == static_cast<int>(i) + 1);
            CHECK(nodes[i].x == doctest::Approx((i + 1.0) / 10.5).epsilon(1e-12));
        }
    }
    {
        // case iii, h=0, γ₀=0: zeros of sin(k(1-x)) at (j+½)/(n+½)
        const auto p = ProblemSpec::make(Potential{}, BoundaryParam::finite(0.0),
                                         BoundaryParam::dirichlet(), 0.0, 0.0, Rational{2, 3},
                                         Rational{1, 2});
        const auto sp = find_eigenvalue(p, 10);
        CHECK(sp.k == doctest::Approx(10.5 * pi).epsilon(1e-10));
        const auto nodes = find_nodes(p, sp);
        REQUIRE(nodes.size() == 10);
        for (std::size_t i = 0; i < nodes.size(); ++i)
            CHECK(nodes[i].x == doctest::Approx((i + 0.5) / 10.5).epsilon(1e-12));
    }
}

TEST_CASE("scaled nodal residuals track the worked example's limit curve") {
    const auto p = oracles::example1_problem();
    const auto sp = find_eigenvalue(p, 70);
    const auto nodes = find_nodes(p, sp);
    REQUIRE(nodes.size() >= 69);
    double worst = 0.0;
    for (const auto& nd : nodes) {
        const double f = 70.0 * 70.0 * pi * pi * (nd.x - nd.ref);
        worst = std::max(worst, std::fabs(f - oracles::example1_limit(nd.x)));
    }
    CHECK(worst < 0.5);  // o(1) band at m = 70
}

TEST_CASE("dataset assembly is deterministic and validates its inputs") {
    const auto p = trivial_case_i();
    const auto ds = generate_dataset(p, {10});
    CHECK(ds.total_nodes() == ds.layer(10)->nodes.size());

    const auto shuffled = generate_dataset(p, {20, 10, 20});
    REQUIRE(shuffled.layers.size() == 2);
    CHECK(shuffled.layers[0].eigen.n == 10);
    CHECK(shuffled.layers[1].eigen.n == 20);

    CHECK_THROWS_AS((void)generate_dataset(p, {}), SolverError);
    CHECK_THROWS_AS((void)generate_dataset(p, {3}), SolverError);  // below n_min
}
