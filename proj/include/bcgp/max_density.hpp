#pragma once

#include "bcgp/graph.hpp"
#include "bcgp/rational.hpp"

namespace bcgp {

// Exact maximum 1-density max{ e(S)/(|S|-1) : S, |S| >= 2 } for graphs of
// any size, via Dinkelbach iteration on an anchored min-cut formulation.
// Independent of the subset-enumeration route in pattern.hpp, which is
// capped at 12 vertices; the two are cross-checked in the tests.
Rational max_one_density_exact(const Graph& g);

}  // namespace bcgp
