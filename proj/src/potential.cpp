#include "nodalsl/potential.hpp"

#include <algorithm>
#include <cmath>

#include "nodalsl/errors.hpp"

namespace nodalsl {

namespace {

constexpr int kPanelsPerUnit = 4096;  // composite Simpson density for expressions

}  // namespace

struct SampledGrid {
    std::vector<double> y;
    std::vector<double> m;  // slope estimates dy/dx
    double h = 0.0;

    explicit SampledGrid(std::vector<double> values) : y(std::move(values)) {
        const std::size_t n = y.size();
        h = 1.0 / static_cast<double>(n - 1);
        m.resize(n);
        m[0] = (-3.0 * y[0] + 4.0 * y[1] - y[2]) / (2.0 * h);
        for (std::size_t i = 1; i + 1 < n; ++i) m[i] = (y[i + 1] - y[i - 1]) / (2.0 * h);
        m[n - 1] = (3.0 * y[n - 1] - 4.0 * y[n - 2] + y[n - 3]) / (2.0 * h);
    }

    [[nodiscard]] double value(double x) const {
        const double xc = std::clamp(x, 0.0, 1.0);
        const std::size_t i = std::min(static_cast<std::size_t>(xc / h), y.size() - 2);
        const double u = (xc - static_cast<double>(i) * h) / h;
        const double u2 = u * u, u3 = u2 * u;
        return y[i] * (2.0 * u3 - 3.0 * u2 + 1.0) + h * m[i] * (u3 - 2.0 * u2 + u) +
               y[i + 1] * (-2.0 * u3 + 3.0 * u2) + h * m[i + 1] * (u3 - u2);
    }

    // x-integral of the Hermite cubic over [i*h, i*h + u*h]
    [[nodiscard]] double segment_integral(std::size_t i, double u) const {
        const double u2 = u * u, u3 = u2 * u, u4 = u2 * u2;
        const double i00 = 0.5 * u4 - u3 + u;
        const double i10 = 0.25 * u4 - (2.0 / 3.0) * u3 + 0.5 * u2;
        const double i01 = -0.5 * u4 + u3;
        const double i11 = 0.25 * u4 - u3 / 3.0;
        return h * (y[i] * i00 + h * m[i] * i10 + y[i + 1] * i01 + h * m[i + 1] * i11);
    }

    [[nodiscard]] double integral_to(double x) const {
        const double xc = std::clamp(x, 0.0, 1.0);
        const std::size_t last = std::min(static_cast<std::size_t>(xc / h), y.size() - 2);
        double acc = 0.0;
        for (std::size_t i = 0; i < last; ++i) acc += segment_integral(i, 1.0);
        acc += segment_integral(last, (xc - static_cast<double>(last) * h) / h);
        return acc;
    }
};

Potential Potential::expression(expr::Ast ast) {
    Potential p;
    p.ast_ = std::move(ast);
    return p;
}

Potential Potential::expression(const std::string& source) {
    return expression(expr::Ast::parse(source));
}

Potential Potential::samples(std::vector<double> values) {
    if (values.size() < 4)
        throw Error("sampled potential needs at least 4 points");
    for (double v : values)
        if (!std::isfinite(v)) throw Error("non-finite potential sample");
    Potential p;
    p.grid_ = std::make_shared<const SampledGrid>(std::move(values));
    return p;
}

double Potential::operator()(double x) const {
    double base = 0.0;
    if (grid_) base = grid_->value(x);
    else if (!ast_.empty()) base = ast_.eval(x);
    return base - offset_;
}

double Potential::integral_to(double x) const {
    double base = 0.0;
    if (grid_) {
        base = grid_->integral_to(x);
    } else if (!ast_.empty() && x != 0.0) {
        // composite Simpson, panel count proportional to the interval
        int panels = std::max(16, static_cast<int>(std::ceil(kPanelsPerUnit * std::fabs(x))));
        if (panels % 2 != 0) ++panels;
        const double h = x / panels;
        double acc = 0.0;
        for (int i = 0; i <= panels; ++i) {
            const double v = ast_.eval(static_cast<double>(i) * h);
            if (!std::isfinite(v)) throw Error("non-finite potential value on [0,1]");
            const double w = (i == 0 || i == panels) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
            acc += w * v;
        }
        base = acc * h / 3.0;
    }
    return base - offset_ * x;
}

Potential Potential::shifted(double delta) const {
    Potential p = *this;
    p.offset_ += delta;
    return p;
}

std::string Potential::describe() const {
    std::string s;
    if (grid_) s = "samples:" + std::to_string(grid_->y.size());
    else if (!ast_.empty()) s = ast_.str();
    else s = "0";
    if (offset_ != 0.0) s += " - (" + std::to_string(offset_) + ")";
    return s;
}

std::pair<Potential, double> normalize_potential(const Potential& q_raw) {
    const double mean = q_raw.integral_to(1.0);
    if (!std::isfinite(mean)) throw Error("non-finite potential value on [0,1]");
    return {q_raw.shifted(mean), mean};
}

double half_integral_Q(const Potential& q, double x) {
    return 0.5 * q.integral_to(x);
}

}  // namespace nodalsl
