#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "esc/error.hpp"

namespace esc {

// Unsigned 128-bit naturals carry every intermediate: with p < 2^30 the
// largest product formed anywhere (x*y*p) stays below 2^120.
__extension__ typedef unsigned __int128 Natural;
__extension__ typedef __int128 Integer;

inline constexpr std::uint64_t kMaxSearchPrime = std::uint64_t{1} << 30;

Natural gcd(Natural a, Natural b) noexcept;
Natural ceil_div(Natural n, Natural d);
Natural floor_div(Natural n, Natural d);

/// Overflow-checked arithmetic. Throws Error(Magnitude) instead of wrapping.
Natural checked_add(Natural a, Natural b);
Natural checked_sub(Natural a, Natural b);
Natural checked_mul(Natural a, Natural b);

/// d | n, using a 64-bit division when both operands fit.
inline bool divides(Natural d, Natural n) noexcept {
    if (d == 0) return n == 0;
    if ((n >> 64) == 0) return static_cast<std::uint64_t>(n) % static_cast<std::uint64_t>(d) == 0;
    return n % d == 0;
}

/// Deterministic for the whole 64-bit range (strong probable-prime test with
/// the first twelve prime bases). n >= 2^64 throws Error(Magnitude).
bool is_prime(Natural n);

/// Every prime in [lo, hi], ascending. Empty when lo > hi.
std::vector<std::uint64_t> primes_in(std::uint64_t lo, std::uint64_t hi);

/// Streams the primes of [lo, hi] in ascending order without materializing them.
void for_each_prime(std::uint64_t lo, std::uint64_t hi,
                    const std::function<void(std::uint64_t)>& visit);

std::string to_string(Natural v);
std::string to_string(Integer v);

/// Parses a non-negative decimal integer. Throws Error(InvalidInput) on
/// malformed text and Error(Magnitude) when it does not fit in 128 bits.
Natural parse_natural(std::string_view text);

} // namespace esc
