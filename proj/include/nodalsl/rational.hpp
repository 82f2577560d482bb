#pragma once

#include <cstdint>
#include <numeric>
#include <string>

#include "nodalsl/errors.hpp"

namespace nodalsl {

/// Exact rational p/r with r > 0 and gcd(p, r) == 1.  Used for the interior
/// coupling points, whose denominators fix the admissible index subsequence.
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    Rational() = default;

    Rational(std::int64_t p, std::int64_t r) : num(p), den(r) {
        if (den == 0) throw ConfigError("zero denominator in rational");
        if (den < 0) { num = -num; den = -den; }
        const auto g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) { num /= g; den /= g; }
    }

    [[nodiscard]] double value() const {
        return static_cast<double>(num) / static_cast<double>(den);
    }

    /// True when the value lies strictly inside (0,1).
    [[nodiscard]] bool in_unit_interval() const { return num > 0 && num < den; }

    [[nodiscard]] std::string str() const {
        return std::to_string(num) + "/" + std::to_string(den);
    }

    friend bool operator==(const Rational&, const Rational&) = default;
};

/// Parse "p/r" (or a bare integer "p").
Rational parse_rational(const std::string& text);

}  // namespace nodalsl
