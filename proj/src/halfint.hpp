#pragma once

#include <cstdint>
#include <compare>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace tempera {

// Element of (1/2)Z stored as twice its value. All arithmetic is exact.
struct HalfInt {
    std::int64_t tw = 0;

    constexpr HalfInt() = default;
    constexpr explicit HalfInt(std::int64_t twice) : tw(twice) {}

    static constexpr HalfInt whole(std::int64_t n) { return HalfInt(2 * n); }
    static constexpr HalfInt half(std::int64_t numerator) { return HalfInt(numerator); }

    constexpr bool is_integer() const { return tw % 2 == 0; }
    constexpr bool is_half_odd() const { return tw % 2 != 0; }

    // Only valid when is_integer().
    constexpr std::int64_t as_integer() const { return tw / 2; }

    friend constexpr HalfInt operator+(HalfInt a, HalfInt b) { return HalfInt(a.tw + b.tw); }
    friend constexpr HalfInt operator-(HalfInt a, HalfInt b) { return HalfInt(a.tw - b.tw); }
    friend constexpr HalfInt operator-(HalfInt a) { return HalfInt(-a.tw); }
    friend constexpr auto operator<=>(HalfInt a, HalfInt b) = default;

    HalfInt& operator+=(HalfInt o) { tw += o.tw; return *this; }
    HalfInt& operator-=(HalfInt o) { tw -= o.tw; return *this; }

    constexpr HalfInt succ() const { return HalfInt(tw + 2); }  // +1
    constexpr HalfInt pred() const { return HalfInt(tw - 2); }  // -1

    // Renders as "p" for integers and "p/2" (lowest terms) otherwise.
    std::string str() const {
        if (is_integer()) return std::to_string(tw / 2);
        return std::to_string(tw) + "/2";
    }
};

constexpr HalfInt ONE_HALF = HalfInt(1);

}  // namespace tempera
