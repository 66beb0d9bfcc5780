#pragma once

#include "lgdeg/arith.hpp"

namespace lgdeg {

struct LpResult {
    bool bounded = true;
    Rational value;
    RatVector x;
};

// Exact simplex with Bland's rule: maximize c.x subject to a x <= b, x >= 0.
// Requires b >= 0 so that the origin is feasible.
LpResult lp_maximize(const RatMatrix& a, const RatVector& b, const RatVector& c);

// Uniform-slack strict feasibility: maximize eps subject to
// rows . x + eps <= 0 for every strict row, rows . x == 0 for every equality row,
// eps <= 1, x >= 0. Returns the optimum eps and the point x.
struct SlackResult {
    Rational slack;
    RatVector x;
};
SlackResult max_uniform_slack(const IntMatrix& strict, const IntMatrix& equalities, std::size_t vars);

}  // namespace lgdeg
