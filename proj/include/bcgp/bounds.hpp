#pragma once

#include "bcgp/graph.hpp"
#include "bcgp/rational.hpp"

#include <string>
#include <vector>

namespace bcgp {

enum class BoundFamily { CliqueFactor, FFactor, HamPower };
enum class BoundKind { LowerBound, StrategyBudgetFull, StrategyBudgetPartial };

// One line of the time/budget tradeoff picture. In log_n coordinates every
// exponent relation is affine in x = log_n t:
//   clique-factor: (r-1) - (r/2-1) x        valid on [2 - 2/r, 2]
//   F-factor:      (2d*-1) - (d*-1) x       valid on [2 - 1/d*, 2]
//   ham-power:     (2k-1) - (k-1) x         valid on [2 - 1/k, 2]
// Strategy budgets share the exponents; polylog factors are reported
// separately, not folded into the exponent.
struct BoundSpec {
    BoundFamily family = BoundFamily::CliqueFactor;
    BoundKind kind = BoundKind::LowerBound;
    int r = 3;             // clique order, family = CliqueFactor
    Rational dstar{1};     // maximum 1-density, family = FFactor
    int k = 2;             // power, family = HamPower

    std::string family_label() const;
    std::string kind_label() const;
    Rational x_min() const;
    // polylog exponent on log n carried by the full-factor strategy budget
    Rational polylog_exponent(int pattern_vertices) const;
};

Rational budget_exponent(const BoundSpec& spec, const Rational& x);

struct CurvePoint {
    std::string family;
    std::string param;
    double x;
    double log_n_b;
    std::string kind;
};

std::vector<CurvePoint> curve_table(const std::vector<BoundSpec>& specs, int grid_points);
std::string curve_table_csv(const std::vector<CurvePoint>& rows);

// Thm-4.1-style statistic: greedily removes the vertex with the highest
// F-copy count until every remaining vertex has at most
// lambda * b^{v-1} t^{e-v+1} n^{v-2e-1} copies within the surviving set, or
// more than eps*n vertices have been removed.
struct CopyCountReport {
    std::vector<int> surviving;
    long long max_count = 0;
    double fraction_below = 0.0;
    double threshold = 0.0;
};

CopyCountReport copy_count_statistic(const Graph& b, const Graph& f, long long t, long long budget,
                                     double lambda, double eps);

double copy_count_threshold(const Graph& f, int n, long long t, long long budget, double lambda);

// The hidden constant has no finite-n value, so alongside fixed-lambda
// checks the statistic can report the minimal lambda that makes the bound
// hold after removing at most eps*n vertices greedily.
double minimal_lambda(const Graph& b, const Graph& f, long long t, long long budget, double eps);

}  // namespace bcgp
