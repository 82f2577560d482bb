#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "nodalsl/basis.hpp"
#include "nodalsl/nodes_io.hpp"

using namespace nodalsl;
namespace {
constexpr double pi = std::numbers::pi;

// small family of smooth test potentials with printable coefficients
Potential random_potential(std::mt19937& rng) {
    std::uniform_real_distribution<double> coef(-1.5, 1.5);
    const std::string src = format_double(coef(rng)) + "*cos(pi*x)+" + format_double(coef(rng)) +
                            "*sin(2*pi*x)+" + format_double(coef(rng)) + "*(x-0.5)";
    return Potential::expression(src);
}

}  // namespace

TEST_CASE("normalize_potential subtracts the mean") {
    {
        auto [q, mean] = normalize_potential(Potential::expression("cos(pi*x)"));
        CHECK(std::fabs(mean) < 1e-12);
        CHECK(std::fabs(q.integral_to(1.0)) < 1e-10);
    }
    {
        auto [q, mean] = normalize_potential(Potential::expression("sin(pi*x)"));
        CHECK(mean == doctest::Approx(2.0 / pi).epsilon(1e-12));
        CHECK(std::fabs(q.integral_to(1.0)) < 1e-10);
        // the zero-mean form is sin(πx) - 2/π
        CHECK(q(0.5) == doctest::Approx(1.0 - 2.0 / pi).epsilon(1e-12));
    }
    {
        auto [q, mean] = normalize_potential(Potential::expression("1"));
        CHECK(mean == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(q(0.3) == doctest::Approx(0.0).epsilon(1e-14));
    }
}

TEST_CASE("half_integral_Q against the analytic antiderivative") {
    const auto q = Potential::expression("cos(pi*x)");
    CHECK(std::fabs(half_integral_Q(q, 1.0)) < 1e-12);                       // full period
    CHECK(half_integral_Q(q, 0.5) == doctest::Approx(1.0 / (2.0 * pi)).epsilon(1e-12));
    CHECK(half_integral_Q(Potential{}, 0.7) == 0.0);
    // general x: Q(x) = sin(πx)/(2π)
    for (double x : {0.1, 0.25, 0.77}) {
        CHECK(half_integral_Q(q, x) ==
              doctest::Approx(std::sin(pi * x) / (2.0 * pi)).epsilon(1e-11));
    }
}

TEST_CASE("sampled potentials interpolate and integrate their grid") {
    std::vector<double> values;
    const int n = 257;
    for (int i = 0; i < n; ++i) values.push_back(std::cos(pi * i / (n - 1.0)));
    const auto q = Potential::samples(values);
    for (double x : {0.013, 0.3, 0.52, 0.981})
        CHECK(q(x) == doctest::Approx(std::cos(pi * x)).epsilon(1e-7));
    CHECK(half_integral_Q(q, 0.5) == doctest::Approx(1.0 / (2.0 * pi)).epsilon(1e-7));
    CHECK_THROWS_AS(Potential::samples({1.0, 2.0}), Error);
}

TEST_CASE("constant-coefficient basis solutions match the closed form") {
    {
        const auto b = integrate_basis(Potential{}, pi);
        double ec = 0.0, es = 0.0;
        for (std::size_t i = 0; i < b.size(); ++i) {
            const double x = b.grid()[i];
            ec = std::max(ec, std::fabs(b.at(i).c - std::cos(pi * x)));
            es = std::max(es, std::fabs(b.at(i).s - std::sin(pi * x) / pi));
        }
        CHECK(ec <= 1e-9);
        CHECK(es <= 1e-9);
    }
    {
        const auto b = integrate_basis(Potential{}, 0.0);  // λ = 0: C = 1, S = x
        for (std::size_t i = 0; i < b.size(); i += 100) {
            CHECK(b.at(i).c == doctest::Approx(1.0).epsilon(1e-13));
            CHECK(b.at(i).s == doctest::Approx(b.grid()[i]).epsilon(1e-13));
        }
    }
}

TEST_CASE("initial conditions are exact and the requested points are on the grid") {
    const auto p = ProblemSpec::make(Potential::expression("cos(pi*x)"),
                                     BoundaryParam::finite(1.0), BoundaryParam::finite(2.0),
                                     3.0, 6.0, Rational{2, 5}, Rational{6, 7});
    const auto b = integrate_basis(p, 31.0);
    CHECK(b.at(0).c == 1.0);
    CHECK(b.at(0).cp == 0.0);
    CHECK(b.at(0).s == 0.0);
    CHECK(b.at(0).sp == 1.0);
    CHECK(b.grid().front() == 0.0);
    CHECK(b.grid().back() == 1.0);
    CHECK_NOTHROW((void)b.index_of(p.xi0.value()));
    CHECK_NOTHROW((void)b.index_of(p.xi1.value()));
    CHECK_THROWS_AS((void)b.index_of(0.1234567), SolverError);
}

TEST_CASE("evaluation between grid points stays on the solution") {
    const auto b = integrate_basis(Potential{}, 10.0 * pi);
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> xs(0.0, 1.0);
    for (int i = 0; i < 200; ++i) {
        const double x = xs(rng);
        const auto st = b.eval(x);
        CHECK(st.c == doctest::Approx(std::cos(10.0 * pi * x)).epsilon(1e-10));
        CHECK(st.s == doctest::Approx(std::sin(10.0 * pi * x) / (10.0 * pi)).epsilon(1e-10));
    }
}

TEST_CASE("Wronskian stays within tolerance for random potentials") {
    std::mt19937 rng(123);
    std::uniform_real_distribution<double> ks(0.3, 300.0);
    for (int i = 0; i < 8; ++i) {
        const auto q = random_potential(rng);
        const auto b = integrate_basis(q, ks(rng));
        CHECK(b.wronskian_deviation() <= 1e-8);
    }
}

TEST_CASE("Wronskian drift beyond tolerance is a loud failure naming k") {
    StepControl sc;
    sc.wronskian_tol = 1e-18;  // unattainable on purpose
    CHECK_THROWS_AS(integrate_basis(Potential::expression("cos(pi*x)"), 200.0, sc), SolverError);
}

TEST_CASE("halving the step reduces the error by the expected order") {
    // q = 0, k = 10π against the closed form; coarse steps so the error is
    // far above roundoff
    auto sup_error = [](double h_max) {
        StepControl sc;
        sc.h_max = h_max;
        sc.osc_c = 1e9;          // let h_max bind
        sc.wronskian_tol = 1.0;  // coarse steps drift on purpose
        const auto b = integrate_basis(Potential{}, 10.0 * pi, sc);
        double e = 0.0;
        for (std::size_t i = 0; i < b.size(); ++i)
            e = std::max(e, std::fabs(b.at(i).c - std::cos(10.0 * pi * b.grid()[i])));
        return e;
    };
    const double e1 = sup_error(1.0 / 24);
    const double e2 = sup_error(1.0 / 48);
    CHECK(e1 > 1e-12);  // measurable
    CHECK(e1 / e2 >= 12.0);
}

TEST_CASE("asymptotic forms match their closed-form terms") {
    const auto zero = Potential{};
    for (double k : {4.0, 31.0}) {
        for (double x : {0.2, 0.9}) {
            CHECK(asymptotic_C(zero, x, k) == std::cos(k * x));
            CHECK(asymptotic_S(zero, x, k) == std::sin(k * x) / k);
        }
    }

    const auto q = Potential::expression("cos(pi*x)");
    const double k = 10.0 * pi;
    {
        // x = 1: Q(1) = 0 and q₁(1) = (cos π - 1)/4 = -1/2
        const double q1 = (std::cos(pi) - 1.0) / 4.0;
        const double want = std::cos(k) + std::sin(k) / k * 0.0 + std::cos(k) / (k * k) * q1;
        CHECK(asymptotic_C(q, 1.0, k) == doctest::Approx(want).epsilon(1e-12));
    }
    {
        // x = 1/2: Q = 1/(2π)
        const double bigq = 1.0 / (2.0 * pi);
        const double want = std::sin(k * 0.5) / k - std::cos(k * 0.5) / (k * k) * bigq;
        CHECK(asymptotic_S(q, 0.5, k) == doctest::Approx(want).epsilon(1e-12));
    }
    CHECK_THROWS_AS(asymptotic_C(q, 0.5, 0.0), Error);
}

TEST_CASE("k^2-scaled distance to the asymptotic form stays bounded in k") {
    const auto q = Potential::expression("cos(pi*x)");
    std::vector<double> scaled;
    for (double k : {10.0 * pi, 20.0 * pi, 40.0 * pi, 80.0 * pi}) {
        const auto b = integrate_basis(q, k);
        const double c1 = b.at(b.size() - 1).c;
        scaled.push_back(k * k * std::fabs(c1 - asymptotic_C(q, 1.0, k)));
    }
    for (std::size_t i = 1; i < scaled.size(); ++i) CHECK(scaled[i] <= 1.05 * scaled[i - 1]);
    CHECK(scaled.front() < 1.0);
}

TEST_CASE("basis solutions track the asymptotic forms at large k") {
    const auto q = Potential::expression("cos(pi*x)");
    const double k = 20.0 * pi;
    const auto b = integrate_basis(q, k);
    double worst_c = 0.0, worst_s = 0.0;
    for (std::size_t i = 0; i < b.size(); i += 50) {
        const double x = b.grid()[i];
        worst_c = std::max(worst_c, std::fabs(b.at(i).c - asymptotic_C(q, x, k)));
        worst_s = std::max(worst_s, std::fabs(b.at(i).s - asymptotic_S(q, x, k)));
    }
    CHECK(worst_c <= 5.0 / (k * k));
    CHECK(worst_s <= 5.0 / (k * k));
}
