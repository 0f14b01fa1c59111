#pragma once

#include "sqfree/intmath.hpp"

#include <array>

namespace sqfree {

inline constexpr unsigned kGoldenMaxExp = 36;

// S(10^e) for e = 0..36, embedded as decimal strings
const std::array<const char*, kGoldenMaxExp + 1>& golden_table();

// S(10^e); throws std::out_of_range for e > 36
u128 golden_value(unsigned e);

}  // namespace sqfree
