#pragma once

#include <cstdint>

namespace coexsim {

// All channel time is kept as exact integer nanoseconds. Table durations
// (slot 9 us, SIFS 16 us, sync slots up to 1 ms, MCOT up to 8 ms) are all
// integral in ns, so no floating point ever enters the contention math.
using Nanos = std::int64_t;

constexpr Nanos operator""_us(unsigned long long v) { return static_cast<Nanos>(v) * 1000; }
constexpr Nanos operator""_ms(unsigned long long v) { return static_cast<Nanos>(v) * 1000000; }

// Ceiling division for a positive divisor; the numerator may be negative
// (countdown residuals minus a pending gap can be).
constexpr std::int64_t ceil_div(std::int64_t num, std::int64_t den) {
    return num / den + (num % den > 0 ? 1 : 0);
}

}  // namespace coexsim
