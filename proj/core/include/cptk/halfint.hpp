#pragma once

#include <compare>
#include <stdexcept>
#include <string>

namespace cptk {

/// Half-integer spin / representation label. Stores 2j so that
/// j in {0, 1/2, 1, 3/2, ...} is exact.
struct HalfInt {
    int twice{0};

    constexpr HalfInt() = default;
    constexpr explicit HalfInt(int twice_value) : twice(twice_value) {}

    static constexpr HalfInt from_int(int j) { return HalfInt{2 * j}; }

    constexpr bool is_integer() const { return twice % 2 == 0; }
    constexpr bool is_half_integer() const { return twice % 2 != 0; }

    friend constexpr HalfInt operator+(HalfInt a, HalfInt b) {
        return HalfInt{a.twice + b.twice};
    }
    friend constexpr HalfInt operator-(HalfInt a, HalfInt b) {
        return HalfInt{a.twice - b.twice};
    }
    constexpr HalfInt abs() const { return HalfInt{twice < 0 ? -twice : twice}; }

    friend constexpr bool operator==(HalfInt, HalfInt) = default;
    friend constexpr auto operator<=>(HalfInt a, HalfInt b) {
        return a.twice <=> b.twice;
    }

    /// Multiplicity 2j+1 of the spin-j ladder.
    constexpr int multiplicity() const { return twice + 1; }
};

inline std::string to_string(HalfInt h) {
    if (h.twice % 2 == 0) return std::to_string(h.twice / 2);
    return std::to_string(h.twice) + "/2";
}

/// Parses "0", "2", "1/2", "3/2", "-1/2".
HalfInt parse_half_int(const std::string& text);

} // namespace cptk
