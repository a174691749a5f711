#include "esc/arith.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>

namespace esc {

std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
    case ErrorKind::DivisionByZero: return "division-by-zero";
    case ErrorKind::Magnitude: return "magnitude";
    case ErrorKind::NotPrime: return "not-prime";
    case ErrorKind::Ordering: return "ordering-violation";
    case ErrorKind::Equation: return "equation-violation";
    case ErrorKind::Precondition: return "precondition";
    case ErrorKind::NotASolutionPair: return "not-a-solution-pair";
    case ErrorKind::Residue: return "residue";
    case ErrorKind::NoSolution: return "no-solution";
    case ErrorKind::StructureViolation: return "structure-violation";
    case ErrorKind::InternalInconsistency: return "internal-inconsistency";
    case ErrorKind::UnknownStrategy: return "unknown-strategy";
    case ErrorKind::InvalidInput: return "invalid-input";
    }
    return "unknown";
}

NoSolutionError::NoSolutionError(std::uint64_t p)
    : Error(ErrorKind::NoSolution,
            "no solution found for p = " + std::to_string(p) + " (conjecture counterexample?)"),
      p_(p) {}

Natural gcd(Natural a, Natural b) noexcept {
    while (b != 0) {
        if (((a | b) >> 64) == 0) {
            std::uint64_t a64 = static_cast<std::uint64_t>(a);
            std::uint64_t b64 = static_cast<std::uint64_t>(b);
            while (b64 != 0) {
                std::uint64_t t = a64 % b64;
                a64 = b64;
                b64 = t;
            }
            return a64;
        }
        Natural t = a % b;
        a = b;
        b = t;
    }
    return a;
}

Natural ceil_div(Natural n, Natural d) {
    if (d == 0) throw Error(ErrorKind::DivisionByZero, "ceil_div: division by zero");
    return n / d + (n % d != 0 ? 1 : 0);
}

Natural floor_div(Natural n, Natural d) {
    if (d == 0) throw Error(ErrorKind::DivisionByZero, "floor_div: division by zero");
    return n / d;
}

Natural checked_add(Natural a, Natural b) {
    Natural r;
    if (__builtin_add_overflow(a, b, &r)) throw Error(ErrorKind::Magnitude, "addition exceeds 128 bits");
    return r;
}

Natural checked_sub(Natural a, Natural b) {
    if (b > a) throw Error(ErrorKind::Magnitude, "subtraction would go negative");
    return a - b;
}

Natural checked_mul(Natural a, Natural b) {
    Natural r;
    if (__builtin_mul_overflow(a, b, &r)) throw Error(ErrorKind::Magnitude, "product exceeds 128 bits");
    return r;
}

namespace {

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<Natural>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
    std::uint64_t result = 1;
    base %= m;
    while (exp > 0) {
        if (exp & 1) result = mul_mod(result, base, m);
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    return result;
}

// Jaeschke / Sorenson-Webster: these twelve bases decide every n < 3.3e24.
constexpr std::array<std::uint64_t, 12> kWitnesses = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};

bool strong_probable_prime(std::uint64_t n, std::uint64_t a) {
    const std::uint64_t d_shift = static_cast<std::uint64_t>(std::countr_zero(n - 1));
    const std::uint64_t d = (n - 1) >> d_shift;
    std::uint64_t x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) return true;
    for (std::uint64_t i = 1; i < d_shift; ++i) {
        x = mul_mod(x, x, n);
        if (x == n - 1) return true;
    }
    return false;
}

// Odd primes up to limit, plain sieve.
std::vector<std::uint32_t> small_primes(std::uint32_t limit) {
    std::vector<bool> composite(limit + 1, false);
    std::vector<std::uint32_t> out;
    for (std::uint64_t i = 3; i <= limit; i += 2) {
        if (composite[i]) continue;
        out.push_back(static_cast<std::uint32_t>(i));
        for (std::uint64_t j = i * i; j <= limit; j += 2 * i) composite[j] = true;
    }
    return out;
}

std::uint64_t isqrt(std::uint64_t n) {
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

constexpr std::uint64_t kSegmentOdds = 1u << 18;
constexpr std::uint64_t kSieveCeiling = std::uint64_t{1} << 48;

} // namespace

bool is_prime(Natural n) {
    if ((n >> 64) != 0) throw Error(ErrorKind::Magnitude, "is_prime: n must be below 2^64");
    const auto v = static_cast<std::uint64_t>(n);
    if (v < 2) return false;
    for (std::uint64_t q : kWitnesses) {
        if (v == q) return true;
        if (v % q == 0) return false;
    }
    if (v < 41 * 41) return true;
    return std::ranges::all_of(kWitnesses, [v](std::uint64_t a) { return strong_probable_prime(v, a); });
}

void for_each_prime(std::uint64_t lo, std::uint64_t hi,
                    const std::function<void(std::uint64_t)>& visit) {
    if (lo > hi) return;
    if (lo <= 2 && hi >= 2) visit(2);
    if (hi < 3) return;

    if (hi >= kSieveCeiling) {
        // Base primes would not fit in memory; test candidates one by one.
        for (std::uint64_t n = std::max<std::uint64_t>(lo, 3) | 1; n <= hi; n += 2) {
            if (is_prime(n)) visit(n);
            if (hi - n < 2) break;
        }
        return;
    }

    const auto base = small_primes(static_cast<std::uint32_t>(isqrt(hi)));
    // Segment over odd numbers: index i stands for start + 2i.
    std::uint64_t start = std::max<std::uint64_t>(lo, 3) | 1;
    std::vector<std::uint8_t> composite;
    while (start <= hi) {
        const std::uint64_t count = std::min(kSegmentOdds, (hi - start) / 2 + 1);
        const std::uint64_t last = start + 2 * (count - 1);
        composite.assign(count, 0);
        for (std::uint32_t q : base) {
            const std::uint64_t qq = std::uint64_t{q} * q;
            if (qq > last) break;
            std::uint64_t first = std::max(qq, (start + q - 1) / q * q);
            if ((first & 1) == 0) first += q;
            for (std::uint64_t m = first; m <= last; m += 2 * q) composite[(m - start) / 2] = 1;
        }
        for (std::uint64_t i = 0; i < count; ++i) {
            if (!composite[i]) visit(start + 2 * i);
        }
        if (hi - last < 2) break;
        start = last + 2;
    }
}

std::vector<std::uint64_t> primes_in(std::uint64_t lo, std::uint64_t hi) {
    std::vector<std::uint64_t> out;
    for_each_prime(lo, hi, [&out](std::uint64_t p) { out.push_back(p); });
    return out;
}

std::string to_string(Natural v) {
    if (v == 0) return "0";
    std::string s;
    while (v != 0) {
        s.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
        v /= 10;
    }
    std::reverse(s.begin(), s.end());
    return s;
}

std::string to_string(Integer v) {
    if (v >= 0) return to_string(static_cast<Natural>(v));
    return "-" + to_string(static_cast<Natural>(0) - static_cast<Natural>(v));
}

Natural parse_natural(std::string_view text) {
    if (text.empty()) throw Error(ErrorKind::InvalidInput, "expected a non-negative integer, got empty text");
    Natural v = 0;
    for (char ch : text) {
        if (ch < '0' || ch > '9') {
            throw Error(ErrorKind::InvalidInput,
                        "expected a non-negative integer, got '" + std::string(text) + "'");
        }
        Natural next;
        if (__builtin_mul_overflow(v, Natural{10}, &next) ||
            __builtin_add_overflow(next, Natural(ch - '0'), &next)) {
            throw Error(ErrorKind::Magnitude, "'" + std::string(text) + "' does not fit in 128 bits");
        }
        v = next;
    }
    return v;
}

} // namespace esc
