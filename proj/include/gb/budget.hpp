#pragma once

#include <cstdlib>
#include <string>

namespace gb::budget {

// Enumeration budgets are expressed in bits: a budget of B allows search
// spaces of at most 2^B states.  The GB_MAX_BITS environment variable can
// lower (never raise) any budget, so CI environments can cap runtimes.

inline constexpr int solve_bits = 29;       // solve_i / solve_g: 2^(n-1) switch vectors
inline constexpr int exact_bits = 25;       // exact_R / exact_G: 2^((n-1)^2) grids
inline constexpr int exact_heavy_bits = 36; // exact with the long-running flag
inline constexpr int mixed_bits = 20;       // mixed_norm middle sign assignments
inline constexpr int injective_bits = 22;   // injective_inf_norm leading assignments
inline constexpr int brute_force_max_n = 6;

inline int max_bits(int default_bits) {
    const char* env = std::getenv("GB_MAX_BITS");
    if (env == nullptr || *env == '\0') return default_bits;
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || v < 0) return default_bits;
    return v < default_bits ? static_cast<int>(v) : default_bits;
}

}  // namespace gb::budget
