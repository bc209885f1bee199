#pragma once

#include <cstdint>
#include <numeric>

namespace softsel {

/// Non-negative rational with 64-bit parts. Kept unreduced so traces show
/// the raw counts; comparisons cross-multiply.
__extension__ typedef unsigned __int128 RatioWide;

struct Ratio {
    std::uint64_t numerator = 0;
    std::uint64_t denominator = 1;

    [[nodiscard]] double value() const {
        return static_cast<double>(numerator) / static_cast<double>(denominator);
    }

    [[nodiscard]] Ratio reduced() const {
        const auto g = std::gcd(numerator, denominator);
        return g == 0 ? *this : Ratio{numerator / g, denominator / g};
    }

    friend bool operator==(const Ratio& a, const Ratio& b) {
        return static_cast<RatioWide>(a.numerator) * b.denominator ==
               static_cast<RatioWide>(b.numerator) * a.denominator;
    }
    friend bool operator<(const Ratio& a, const Ratio& b) {
        return static_cast<RatioWide>(a.numerator) * b.denominator <
               static_cast<RatioWide>(b.numerator) * a.denominator;
    }
    friend bool operator>(const Ratio& a, const Ratio& b) { return b < a; }
};

}  // namespace softsel
