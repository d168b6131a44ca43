#ifndef HARDY_TEST_UTIL_HPP
#define HARDY_TEST_UTIL_HPP

#include <string>

#include "hardy/operator.hpp"
#include "hardy/weight_expr.hpp"

namespace hardy::testutil {

inline ProblemSpec make_spec(double p, double q, int level = 10,
                             const std::string& u = "1",
                             const std::string& v = "1",
                             Interval iv = Interval(0.0, 1.0)) {
    GridPtr grid = make_grid(iv, level);
    return ProblemSpec(p, q, grid,
                       WeightPair(parse_weight(u), parse_weight(v), grid));
}

} // namespace hardy::testutil

#endif
