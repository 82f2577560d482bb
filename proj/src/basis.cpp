#include "nodalsl/basis.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "nodalsl/errors.hpp"

namespace nodalsl {

namespace {

struct Vec4 {
    double a = 0, b = 0, c = 0, d = 0;
};

inline Vec4 operator+(Vec4 u, Vec4 v) { return {u.a + v.a, u.b + v.b, u.c + v.c, u.d + v.d}; }
inline Vec4 operator*(double s, Vec4 v) { return {s * v.a, s * v.b, s * v.c, s * v.d}; }

// State layout: (C, C', S, S');  y' = (C', w C, S', w S) with w = q(x) - λ.
struct BasisRhs {
    const Potential& q;
    double lambda;
    Vec4 operator()(double x, Vec4 y) const {
        const double w = q(x) - lambda;
        return {y.b, w * y.a, y.d, w * y.c};
    }
};

// Dormand-Prince 8th-order advance (the DOP853 stage/weight set of Hairer,
// Norsett & Wanner), used here with a fixed step.
template <class Rhs>
Vec4 rk8_step(const Rhs& f, double t, Vec4 y, double h) {
    constexpr double c2 = 0.526001519587677318785587544488e-01,
                     c3 = 0.789002279381515978178381316732e-01,
                     c4 = 0.118350341907227396726757197510e+00,
                     c5 = 0.281649658092772603273242802490e+00,
                     c6 = 0.333333333333333333333333333333e+00,
                     c7 = 0.25e+00,
                     c8 = 0.307692307692307692307692307692e+00,
                     c9 = 0.651282051282051282051282051282e+00,
                     c10 = 0.6e+00,
                     c11 = 0.857142857142857142857142857142e+00;

    constexpr double b1 = 5.42937341165687622380535766363e-2,
                     b6 = 4.45031289275240888144113950566e0,
                     b7 = 1.89151789931450038304281599044e0,
                     b8 = -5.8012039600105847814672114227e0,
                     b9 = 3.1116436695781989440891606237e-1,
                     b10 = -1.52160949662516078556178806805e-1,
                     b11 = 2.01365400804030348374776537501e-1,
                     b12 = 4.47106157277725905176885569043e-2;

    constexpr double a21 = 5.26001519587677318785587544488e-2,
                     a31 = 1.97250569845378994544595329183e-2,
                     a32 = 5.91751709536136983633785987549e-2,
                     a41 = 2.95875854768068491816892993775e-2,
                     a43 = 8.87627564304205475450678981324e-2,
                     a51 = 2.41365134159266685502369798665e-1,
                     a53 = -8.84549479328286085344864962717e-1,
                     a54 = 9.24834003261792003115737966543e-1,
                     a61 = 3.7037037037037037037037037037e-2,
                     a64 = 1.70828608729473871279604482173e-1,
                     a65 = 1.25467687566822425016691814123e-1,
                     a71 = 3.7109375e-2,
                     a74 = 1.70252211019544039314978060272e-1,
                     a75 = 6.02165389804559606850219397283e-2,
                     a76 = -1.7578125e-2;

    constexpr double a81 = 3.70920001185047927108779319836e-2,
                     a84 = 1.70383925712239993810214054705e-1,
                     a85 = 1.07262030446373284651809199168e-1,
                     a86 = -1.53194377486244017527936158236e-2,
                     a87 = 8.27378916381402288758473766002e-3,
                     a91 = 6.24110958716075717114429577812e-1,
                     a94 = -3.36089262944694129406857109825e0,
                     a95 = -8.68219346841726006818189891453e-1,
                     a96 = 2.75920996994467083049415600797e1,
                     a97 = 2.01540675504778934086186788979e1,
                     a98 = -4.34898841810699588477366255144e1,
                     a101 = 4.77662536438264365890433908527e-1,
                     a104 = -2.48811461997166764192642586468e0,
                     a105 = -5.90290826836842996371446475743e-1,
                     a106 = 2.12300514481811942347288949897e1,
                     a107 = 1.52792336328824235832596922938e1,
                     a108 = -3.32882109689848629194453265587e1,
                     a109 = -2.03312017085086261358222928593e-2;

    constexpr double a111 = -9.3714243008598732571704021658e-1,
                     a114 = 5.18637242884406370830023853209e0,
                     a115 = 1.09143734899672957818500254654e0,
                     a116 = -8.14978701074692612513997267357e0,
                     a117 = -1.85200656599969598641566180701e1,
                     a118 = 2.27394870993505042818970056734e1,
                     a119 = 2.49360555267965238987089396762e0,
                     a1110 = -3.0467644718982195003823669022e0,
                     a121 = 2.27331014751653820792359768449e0,
                     a124 = -1.05344954667372501984066689879e1,
                     a125 = -2.00087205822486249909675718444e0,
                     a126 = -1.79589318631187989172765950534e1,
                     a127 = 2.79488845294199600508499808837e1,
                     a128 = -2.85899827713502369474065508674e0,
                     a129 = -8.87285693353062954433549289258e0,
                     a1210 = 1.23605671757943030647266201528e1,
                     a1211 = 6.43392746015763530355970484046e-1;

    const Vec4 k1 = f(t, y);
    const Vec4 k2 = f(t + c2 * h, y + h * a21 * k1);
    const Vec4 k3 = f(t + c3 * h, y + h * (a31 * k1 + a32 * k2));
    const Vec4 k4 = f(t + c4 * h, y + h * (a41 * k1 + a43 * k3));
    const Vec4 k5 = f(t + c5 * h, y + h * (a51 * k1 + a53 * k3 + a54 * k4));
    const Vec4 k6 = f(t + c6 * h, y + h * (a61 * k1 + a64 * k4 + a65 * k5));
    const Vec4 k7 = f(t + c7 * h, y + h * (a71 * k1 + a74 * k4 + a75 * k5 + a76 * k6));
    const Vec4 k8 =
        f(t + c8 * h, y + h * (a81 * k1 + a84 * k4 + a85 * k5 + a86 * k6 + a87 * k7));
    const Vec4 k9 = f(t + c9 * h, y + h * (a91 * k1 + a94 * k4 + a95 * k5 + a96 * k6 +
                                           a97 * k7 + a98 * k8));
    const Vec4 k10 = f(t + c10 * h, y + h * (a101 * k1 + a104 * k4 + a105 * k5 + a106 * k6 +
                                             a107 * k7 + a108 * k8 + a109 * k9));
    const Vec4 k11 = f(t + c11 * h, y + h * (a111 * k1 + a114 * k4 + a115 * k5 + a116 * k6 +
                                             a117 * k7 + a118 * k8 + a119 * k9 + a1110 * k10));
    const Vec4 k12 =
        f(t + h, y + h * (a121 * k1 + a124 * k4 + a125 * k5 + a126 * k6 + a127 * k7 +
                          a128 * k8 + a129 * k9 + a1210 * k10 + a1211 * k11));

    return y + h * (b1 * k1 + b6 * k6 + b7 * k7 + b8 * k8 + b9 * k9 + b10 * k10 + b11 * k11 +
                    b12 * k12);
}

Vec4 to_vec(const BasisState& s) { return {s.c, s.cp, s.s, s.sp}; }
BasisState to_state(Vec4 v) { return {v.a, v.b, v.c, v.d}; }

std::vector<double> build_grid(double step_cap, std::span<const double> interior_points) {
    const auto n = static_cast<std::size_t>(std::ceil(1.0 / step_cap));
    std::vector<double> grid;
    grid.reserve(n + 1 + interior_points.size());
    for (std::size_t i = 0; i <= n; ++i)
        grid.push_back(static_cast<double>(i) / static_cast<double>(n));
    for (double p : interior_points) {
        if (p <= 0.0 || p >= 1.0) continue;
        auto it = std::lower_bound(grid.begin(), grid.end(), p);
        // replace a uniform point that coincides to roundoff, so index_of
        // finds the exact requested value
        if (it != grid.end() && std::fabs(*it - p) < 1e-13) *it = p;
        else if (it != grid.begin() && std::fabs(*(it - 1) - p) < 1e-13) *(it - 1) = p;
        else grid.insert(it, p);
    }
    return grid;
}

}  // namespace

std::size_t BasisSolutions::index_of(double x) const {
    const auto it = std::lower_bound(grid_.begin(), grid_.end(), x);
    if (it == grid_.end() || *it != x)
        throw SolverError("grid point " + std::to_string(x) + " missing from basis grid");
    return static_cast<std::size_t>(it - grid_.begin());
}

BasisState BasisSolutions::eval(double x) const {
    if (x < 0.0 || x > 1.0) throw SolverError("basis evaluation outside [0,1]");
    auto it = std::upper_bound(grid_.begin(), grid_.end(), x);
    const std::size_t i = static_cast<std::size_t>(it - grid_.begin()) - 1;
    const double x0 = grid_[i];
    if (x == x0) return states_[i];
    const BasisRhs rhs{q_, lambda()};
    return to_state(rk8_step(rhs, x0, to_vec(states_[i]), x - x0));
}

double BasisSolutions::wronskian_deviation() const {
    double dev = 0.0;
    for (const auto& s : states_)
        dev = std::max(dev, std::fabs(s.c * s.sp - s.cp * s.s - 1.0));
    return dev;
}

BasisSolutions integrate_basis(const Potential& q, double k, const StepControl& sc,
                               std::span<const double> interior_points) {
    if (k < 0.0 || !std::isfinite(k)) throw SolverError("k must be finite and >= 0");
    const double step_cap = std::min(sc.h_max, sc.osc_c / std::max(k, 1.0));

    BasisSolutions out;
    out.q_ = q;
    out.k_ = k;
    out.grid_ = build_grid(step_cap, interior_points);
    out.states_.resize(out.grid_.size());
    out.states_[0] = BasisState{};  // exact initial conditions

    const BasisRhs rhs{q, k * k};
    Vec4 y = to_vec(out.states_[0]);
    for (std::size_t i = 1; i < out.grid_.size(); ++i) {
        y = rk8_step(rhs, out.grid_[i - 1], y, out.grid_[i] - out.grid_[i - 1]);
        out.states_[i] = to_state(y);
    }

    const double dev = out.wronskian_deviation();
    if (!(dev <= sc.wronskian_tol))
        throw SolverError("Wronskian drift " + std::to_string(dev) + " exceeds tolerance at k=" +
                          std::to_string(k));
    return out;
}

BasisSolutions integrate_basis(const ProblemSpec& problem, double k, const StepControl& sc) {
    const double pts[2] = {problem.xi0.value(), problem.xi1.value()};
    return integrate_basis(problem.q, k, sc, pts);
}

double asymptotic_C(const Potential& q, double x, double k) {
    if (k <= 0.0) throw Error("asymptotic form requires k > 0");
    const double bigq = half_integral_Q(q, x);
    const double q1 = 0.25 * (q(x) - q(0.0)) - 0.5 * bigq * bigq;
    return std::cos(k * x) + std::sin(k * x) / k * bigq + std::cos(k * x) / (k * k) * q1;
}

double asymptotic_S(const Potential& q, double x, double k) {
    if (k <= 0.0) throw Error("asymptotic form requires k > 0");
    const double bigq = half_integral_Q(q, x);
    return std::sin(k * x) / k - std::cos(k * x) / (k * k) * bigq;
}

}  // namespace nodalsl
