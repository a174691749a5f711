#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "esc/arith.hpp"

namespace esc {

/// A natural number known to be prime. The only way to get one is through
/// make(), which runs the deterministic primality test.
class Prime {
public:
    static Prime make(Natural n);

    std::uint64_t value() const noexcept { return value_; }
    operator Natural() const noexcept { return value_; }

    friend bool operator==(Prime, Prime) = default;
    friend auto operator<=>(Prime, Prime) = default;

private:
    explicit Prime(std::uint64_t v) : value_(v) {}
    std::uint64_t value_;
};

/// Inclusive integer interval; empty when lo > hi.
struct Bounds {
    Natural lo = 1;
    Natural hi = 0;

    static Bounds empty_range() noexcept { return {}; }

    bool empty() const noexcept { return lo > hi; }
    bool contains(Natural v) const noexcept { return lo <= v && v <= hi; }
    Natural size() const noexcept { return empty() ? 0 : hi - lo + 1; }

    friend bool operator==(const Bounds&, const Bounds&) = default;
};

/// A verified ordered triple x <= y <= z with 4/p = 1/x + 1/y + 1/z.
class Solution {
public:
    Prime prime() const noexcept { return p_; }
    Natural p() const noexcept { return p_.value(); }
    Natural x() const noexcept { return x_; }
    Natural y() const noexcept { return y_; }
    Natural z() const noexcept { return z_; }

    friend bool operator==(const Solution&, const Solution&) = default;
    friend auto operator<=>(const Solution&, const Solution&) = default;

private:
    Solution(Prime p, Natural x, Natural y, Natural z) : p_(p), x_(x), y_(y), z_(z) {}
    friend Solution make_solution(Prime p, Natural x, Natural y, Natural z);

    Prime p_;
    Natural x_;
    Natural y_;
    Natural z_;
};

/// Validating constructor. Throws Error with kind NotPrime, Ordering or
/// Equation (or Magnitude for inputs whose products leave 128 bits).
Solution make_solution(Natural p, Natural x, Natural y, Natural z);
Solution make_solution(Prime p, Natural x, Natural y, Natural z);

enum class SolutionType { TypeI, TypeII };

std::string_view to_string(SolutionType t) noexcept;

/// x = x0*a*b*d, y = y0*a*c*d, z = z0*b*c*d with d = gcd(x,y,z) and a, b, c
/// the pairwise gcds divided by d. c_star = c/p whenever p | c.
struct Factorization {
    Natural d = 0;
    Natural a = 0;
    Natural b = 0;
    Natural c = 0;
    Natural x0 = 0;
    Natural y0 = 0;
    Natural z0 = 0;
    std::optional<Natural> c_star;

    friend bool operator==(const Factorization&, const Factorization&) = default;
};

/// Throws Error(InternalInconsistency) naming the first broken invariant.
void check_factorization(const Factorization& f, const Solution& s);

/// A solution together with its type tag and whether x = ceil(yp/(4y-p)).
struct AnnotatedSolution {
    Solution solution;
    SolutionType type;
    bool eq5;

    friend bool operator==(const AnnotatedSolution&, const AnnotatedSolution&) = default;
};

inline constexpr std::string_view kSolutionCsvHeader = "p,x,y,z,type,eq5";

/// {"p":..,"x":..,"y":..,"z":..,"type":"I","eq5":true}; key order is fixed.
std::string to_json(const AnnotatedSolution& s);
/// p,x,y,z,type,eq5 without trailing newline.
std::string to_csv_row(const AnnotatedSolution& s);

} // namespace esc
