#include "esc/oracle.hpp"

#include <algorithm>
#include <cstdint>

namespace esc::oracle {

Bounds elementary_x_range(Prime p) {
    const Natural pv = p;
    return {std::max<Natural>(1, pv / 4), 3 * pv / 4 + 1};
}

Bounds elementary_y_range(Prime p, Natural x) {
    const Natural pv = p;
    if (4 * x <= pv) return Bounds::empty_range();
    const Natural slack = 4 * x - pv;
    const Natural xp = checked_mul(x, pv);
    return {xp / slack + 1, checked_mul(2, xp) / slack};
}

std::optional<Natural> z_candidate(Prime p, Natural x, Natural y) {
    const Natural pv = p;
    const Natural four_xy = checked_mul(4, checked_mul(x, y));
    const Natural p_sum = checked_mul(pv, checked_add(x, y));
    if (four_xy <= p_sum) return std::nullopt;
    const Natural denom = four_xy - p_sum;
    const Natural numer = checked_mul(checked_mul(x, y), pv);
    if (!divides(denom, numer)) return std::nullopt;
    const Natural z = numer / denom;
    if (z < y) return std::nullopt;
    return z;
}

namespace {

// Inner scan over one x. Word is std::uint64_t when x*y*p provably fits,
// which is the common case and several times faster than 128-bit division.
template <typename Word>
void scan_x(Prime p, Word x, Word y_lo, Word y_hi, std::vector<Solution>& out) {
    const Word pv = static_cast<Word>(p.value());
    const Word slack = 4 * x - pv;
    const Word xp = x * pv;
    for (Word y = y_lo; y <= y_hi; ++y) {
        const Word denom = slack * y - xp;
        const Word numer = xp * y;
        if (numer % denom != 0) continue;
        const Word z = numer / denom;
        if (z < y) continue;
        out.push_back(make_solution(p, x, y, z));
    }
}

} // namespace

std::vector<Solution> enumerate_all(Prime p) {
    if (p.value() >= kMaxSearchPrime) {
        throw Error(ErrorKind::Magnitude, "enumerate_all: p must be below 2^30");
    }
    // y <= 2xp/(4x - p) <= 2xp and x <= p, so x*y*p <= 2p^4 < 2^64 for p < 2^15.
    const bool narrow = p.value() < (std::uint64_t{1} << 15);
    std::vector<Solution> out;
    const Bounds xs = elementary_x_range(p);
    for (Natural x = xs.lo; x <= xs.hi; ++x) {
        const Bounds ys = elementary_y_range(p, x);
        if (ys.empty()) continue;
        const Natural y_lo = std::max(ys.lo, x);
        if (y_lo > ys.hi) continue;
        if (narrow) {
            scan_x<std::uint64_t>(p, static_cast<std::uint64_t>(x), static_cast<std::uint64_t>(y_lo),
                                  static_cast<std::uint64_t>(ys.hi), out);
        } else {
            scan_x<Natural>(p, x, y_lo, ys.hi, out);
        }
    }
    return out;
}

bool is_solution(Natural p, Natural x, Natural y, Natural z) noexcept {
    try {
        make_solution(p, x, y, z);
        return true;
    } catch (const Error&) {
        return false;
    }
}

} // namespace esc::oracle
