#pragma once

#include <optional>
#include <vector>

#include "esc/model.hpp"

// Brute-force ground truth. Everything here follows from comparing unit
// fractions directly; none of the sharper bounds from the reduction module
// are assumed, so those bounds can be tested against this enumeration.
namespace esc::oracle {

/// [max(1, floor(p/4)), floor(3p/4) + 1], from 1/x < 4/p <= 3/x.
Bounds elementary_x_range(Prime p);

/// From 1/y < 4/p - 1/x <= 2/y; empty when 4x <= p.
Bounds elementary_y_range(Prime p, Natural x);

/// z = xyp / (4xy - (x+y)p) when that is a positive integer >= y.
std::optional<Natural> z_candidate(Prime p, Natural x, Natural y);

/// Every solution for p ordered by (x, y). Throws Error(Magnitude) for p >= 2^30.
std::vector<Solution> enumerate_all(Prime p);

bool is_solution(Natural p, Natural x, Natural y, Natural z) noexcept;

} // namespace esc::oracle
