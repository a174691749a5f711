#include "esc/reduction.hpp"

#include <algorithm>
#include <cstdint>

namespace esc::reduction {

namespace {

void require_search_range(Prime p, const char* what) {
    if (p.value() >= kMaxSearchPrime) {
        throw Error(ErrorKind::Magnitude, std::string(what) + ": p must be below 2^30");
    }
}

// x*y*p fits in 64 bits for every pair either search visits when p < 2^15.
bool narrow_words(Prime p) { return p.value() < (std::uint64_t{1} << 15); }

Natural identity_rhs(Natural y, Natural p, Natural xy, Natural x_plus_y) {
    return gcd(y, p) * gcd(xy, x_plus_y);
}

template <typename Word>
void scan_two_var(Prime p, Word x, Word y_lo, Word y_hi, std::vector<Solution>& out) {
    const Word pv = static_cast<Word>(p.value());
    const Word slack = 4 * x - pv;
    const Word xp = x * pv;
    for (Word y = y_lo; y <= y_hi; ++y) {
        const Word lhs = slack * y;
        if (lhs <= xp) continue;
        const Word denom = lhs - xp;
        const Word xyp = xp * y;
        // The right-hand side of the identity always divides xyp, so any
        // pair failing this cannot have a zero residual.
        if (xyp % denom != 0) continue;
        if (denom != static_cast<Word>(identity_rhs(y, pv, Natural{x} * y, Natural{x} + y))) continue;
        out.push_back(make_solution(p, x, y, xyp / denom));
    }
}

} // namespace

Bounds lemma1_x_bounds(Prime p) {
    const Natural pv = p;
    return {ceil_div(pv, 4), 3 * pv / 4};
}

Bounds lemma1_y_bounds(Prime p, Natural x) {
    const Natural pv = p;
    const Natural four_x = checked_mul(4, x);
    if (four_x <= pv) {
        throw Error(ErrorKind::Precondition, "lemma1_y_bounds: requires 4x > p (x = " + to_string(x) +
                                                 ", p = " + to_string(pv) + ")");
    }
    const Natural slack = four_x - pv;
    const Natural xp = checked_mul(x, pv);
    return {ceil_div(xp, slack), floor_div(checked_mul(2, xp), slack)};
}

Bounds corollary1_x_bounds(Prime p) {
    const Natural pv = p;
    return {ceil_div(pv, 4), ceil_div(pv, 2)};
}

Integer theorem1_residual(Prime p, Natural x, Natural y) {
    const Natural pv = p;
    const Natural xy = checked_mul(x, y);
    const Natural four_xy = checked_mul(4, xy);
    const Natural p_sum = checked_mul(pv, checked_add(x, y));
    const Natural rhs = checked_mul(gcd(y, pv), gcd(xy, x + y));
    constexpr Natural kSignedLimit = Natural{1} << 126;
    if (four_xy >= kSignedLimit || p_sum >= kSignedLimit || rhs >= kSignedLimit) {
        throw Error(ErrorKind::Magnitude, "theorem1_residual: operands exceed the signed 128-bit range");
    }
    return static_cast<Integer>(four_xy) - static_cast<Integer>(p_sum) - static_cast<Integer>(rhs);
}

Natural z_from_xy(Prime p, Natural x, Natural y) {
    if (x == 0 || y == 0 || theorem1_residual(p, x, y) != 0) {
        throw Error(ErrorKind::NotASolutionPair, "(" + to_string(x) + ", " + to_string(y) +
                                                     ") does not satisfy the gcd identity for p = " +
                                                     to_string(Natural{p}));
    }
    const Natural pv = p;
    const Natural xy = x * y;
    return checked_mul(xy, pv) / (gcd(y, pv) * gcd(xy, x + y));
}

Natural x_from_y(Prime p, Natural y) {
    const Natural pv = p;
    const Natural four_y = checked_mul(4, y);
    if (four_y <= pv) {
        throw Error(ErrorKind::Precondition, "x_from_y: requires 4y > p (y = " + to_string(y) +
                                                 ", p = " + to_string(pv) + ")");
    }
    return ceil_div(checked_mul(y, pv), four_y - pv);
}

Bounds one_var_y_region(Prime p) {
    const Natural pv = p;
    const Natural c = ceil_div(pv, 4);
    return {ceil_div(pv, 2), floor_div(2 * c * pv, 4 * c - pv)};
}

bool one_var_condition(Prime p, Natural y) {
    const Natural pv = p;
    const Natural x = x_from_y(p, y);
    const Natural lhs = (4 * y - pv) * x - y * pv;
    return lhs == gcd(y, pv) * gcd(x * y, x + y);
}

std::vector<Solution> search_two_var(Prime p) {
    require_search_range(p, "search_two_var");
    const bool narrow = narrow_words(p);
    std::vector<Solution> out;
    const Bounds xs = lemma1_x_bounds(p);
    for (Natural x = xs.lo; x <= xs.hi; ++x) {
        if (4 * x <= Natural{p}) continue;
        const Bounds ys = lemma1_y_bounds(p, x);
        const Natural y_lo = std::max(ys.lo, x);
        if (y_lo > ys.hi) continue;
        if (narrow) {
            scan_two_var<std::uint64_t>(p, static_cast<std::uint64_t>(x), static_cast<std::uint64_t>(y_lo),
                                        static_cast<std::uint64_t>(ys.hi), out);
        } else {
            scan_two_var<Natural>(p, x, y_lo, ys.hi, out);
        }
    }
    return out;
}

std::vector<Solution> search_one_var(Prime p, bool stop_at_first) {
    require_search_range(p, "search_one_var");
    const Natural pv = p;
    std::vector<Solution> out;
    const Bounds region = one_var_y_region(p);
    for (Natural y = region.lo; y <= region.hi; ++y) {
        // 4y >= 2p > p throughout the region.
        const Natural slack = 4 * y - pv;
        const Natural yp = y * pv;
        const Natural x = (yp + slack - 1) / slack;
        const Natural lhs = slack * x - yp;
        if (lhs == 0) continue;
        const Natural xyp = x * yp;
        if (!divides(lhs, xyp)) continue;
        if (lhs != gcd(y, pv) * gcd(x * y, x + y)) continue;
        const Natural z = xyp / lhs;
        if (x > y || z < y) continue;
        out.push_back(make_solution(p, x, y, z));
        if (stop_at_first) break;
    }
    return out;
}

Solution special_3mod4(Prime p) {
    const Natural pv = p;
    if (pv % 4 != 3) {
        throw Error(ErrorKind::Residue, "special_3mod4: " + to_string(pv) + " is not 3 mod 4");
    }
    const Natural half = (pv + 1) / 2;
    return make_solution(p, half, half, pv * (pv + 1) / 4);
}

Solution hybrid_search(Prime p) {
    if (auto first = search_one_var(p, true); !first.empty()) return first.front();
    if (auto all = search_two_var(p); !all.empty()) return all.front();
    throw NoSolutionError(p.value());
}

} // namespace esc::reduction
