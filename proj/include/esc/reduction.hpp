#pragma once

#include <vector>

#include "esc/model.hpp"

// Dimension reductions of 4/p = 1/x + 1/y + 1/z. Once x and y are fixed, z is
// determined by a gcd identity; for type I solutions x is in turn determined
// by y, which leaves a search over y alone.
namespace esc::reduction {

/// [ceil(p/4), floor(3p/4)]
Bounds lemma1_x_bounds(Prime p);

/// [ceil(xp/(4x-p)), floor(2xp/(4x-p))]. Throws Error(Precondition) when 4x <= p.
Bounds lemma1_y_bounds(Prime p, Natural x);

/// [ceil(p/4), ceil(p/2)]
Bounds corollary1_x_bounds(Prime p);

/// (4xy - (x+y)p) - gcd(y,p) * gcd(xy, x+y). Zero exactly when (x, y) extends
/// to a solution.
Integer theorem1_residual(Prime p, Natural x, Natural y);

/// z = xyp / (gcd(y,p) * gcd(xy, x+y)). Throws Error(NotASolutionPair) unless
/// the residual is zero.
Natural z_from_xy(Prime p, Natural x, Natural y);

/// ceil(yp / (4y-p)). Throws Error(Precondition) when 4y <= p.
Natural x_from_y(Prime p, Natural y);

/// y range of the one-variable search:
/// [ceil(p/2), floor(2*ceil(p/4)*p / (4*ceil(p/4) - p))].
Bounds one_var_y_region(Prime p);

/// (4y-p)x - yp == gcd(y,p) * gcd(xy, x+y) with x = x_from_y(p, y).
bool one_var_condition(Prime p, Natural y);

/// Every (x, y) inside lemma1_x_bounds / lemma1_y_bounds with zero residual, completed by
/// z_from_xy, ordered by (x, y).
std::vector<Solution> search_two_var(Prime p);

/// Solutions (x_from_y(y), y, z_from_xy) for each y in the one-variable region
/// satisfying the condition, ascending y.
std::vector<Solution> search_one_var(Prime p, bool stop_at_first = true);

/// ((p+1)/2, (p+1)/2, p(p+1)/4) for p = 3 mod 4; Error(Residue) otherwise.
Solution special_3mod4(Prime p);

/// First one-variable hit, else first two-variable hit; NoSolutionError if
/// both come back empty.
Solution hybrid_search(Prime p);

} // namespace esc::reduction
