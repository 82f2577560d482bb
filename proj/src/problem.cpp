#include "nodalsl/problem.hpp"

#include <charconv>
#include <cmath>

namespace nodalsl {

BoundaryParam BoundaryParam::finite(double v) {
    if (!std::isfinite(v)) throw ConfigError("boundary coefficient must be finite");
    BoundaryParam b;
    b.value_ = v;
    return b;
}

double BoundaryParam::value() const {
    if (dirichlet_) throw Error("boundary coefficient is Dirichlet (no finite value)");
    return value_;
}

std::string BoundaryParam::str() const {
    return dirichlet_ ? "inf" : std::to_string(value_);
}

const char* case_name(ProblemCase c) {
    switch (c) {
        case ProblemCase::BothNonlocal: return "i";
        case ProblemCase::LeftDirichlet: return "ii";
        case ProblemCase::RightDirichlet: return "iii";
    }
    return "?";
}

ProblemCase parse_case(const std::string& s) {
    if (s == "i" || s == "1") return ProblemCase::BothNonlocal;
    if (s == "ii" || s == "2") return ProblemCase::LeftDirichlet;
    if (s == "iii" || s == "3") return ProblemCase::RightDirichlet;
    throw ConfigError("unknown case '" + s + "' (expected i, ii or iii)", "case");
}

Rational parse_rational(const std::string& text) {
    const auto slash = text.find('/');
    auto to_int = [&](const std::string& part) {
        std::int64_t v = 0;
        const char* b = part.data();
        const char* e = part.data() + part.size();
        while (b < e && (*b == ' ' || *b == '\t')) ++b;
        while (e > b && (e[-1] == ' ' || e[-1] == '\t')) --e;
        auto [p, ec] = std::from_chars(b, e, v);
        if (ec != std::errc{} || p != e)
            throw ConfigError("malformed rational '" + text + "'");
        return v;
    };
    if (slash == std::string::npos) return Rational(to_int(text), 1);
    return Rational(to_int(text.substr(0, slash)), to_int(text.substr(slash + 1)));
}

ProblemSpec ProblemSpec::make(const Potential& q_raw, BoundaryParam h, BoundaryParam H,
                              double gamma0, double gamma1, Rational xi0, Rational xi1) {
    if (h.is_dirichlet() && H.is_dirichlet())
        throw ConfigError("h and H cannot both be infinite");
    if (!xi0.in_unit_interval()) throw ConfigError("xi0 must lie strictly in (0,1)", "xi0");
    if (!xi1.in_unit_interval()) throw ConfigError("xi1 must lie strictly in (0,1)", "xi1");
    if (!std::isfinite(gamma0) || !std::isfinite(gamma1))
        throw ConfigError("gamma coefficients must be finite");

    ProblemSpec p;
    auto [q, mean] = normalize_potential(q_raw);
    p.q = std::move(q);
    p.q_mean = mean;
    p.h = h;
    p.H = H;
    p.gamma0 = gamma0;
    p.gamma1 = gamma1;
    p.xi0 = xi0;
    p.xi1 = xi1;
    p.case_tag = h.is_dirichlet()   ? ProblemCase::LeftDirichlet
                 : H.is_dirichlet() ? ProblemCase::RightDirichlet
                                    : ProblemCase::BothNonlocal;
    return p;
}

}  // namespace nodalsl
