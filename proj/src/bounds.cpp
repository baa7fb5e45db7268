#include "bcgp/bounds.hpp"

#include "bcgp/checkers.hpp"
#include "bcgp/factor_strategies.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace bcgp {

std::string BoundSpec::family_label() const {
    switch (family) {
        case BoundFamily::CliqueFactor: return "clique_factor";
        case BoundFamily::FFactor: return "f_factor";
        case BoundFamily::HamPower: return "ham_power";
    }
    return "?";
}

std::string BoundSpec::kind_label() const {
    switch (kind) {
        case BoundKind::LowerBound: return "lower_bound";
        case BoundKind::StrategyBudgetFull: return "strategy_budget_full";
        case BoundKind::StrategyBudgetPartial: return "strategy_budget_partial";
    }
    return "?";
}

Rational BoundSpec::x_min() const {
    switch (family) {
        case BoundFamily::CliqueFactor: return Rational(2) - Rational(2, r);
        case BoundFamily::FFactor: return Rational(2) - Rational(dstar.den(), dstar.num());
        case BoundFamily::HamPower: return Rational(2) - Rational(1, k);
    }
    return Rational(0);
}

Rational BoundSpec::polylog_exponent(int pattern_vertices) const {
    if (kind != BoundKind::StrategyBudgetFull) return Rational(0);
    return Rational(1, pattern_vertices - 1);
}

Rational budget_exponent(const BoundSpec& spec, const Rational& x) {
    if (x < spec.x_min() || x > Rational(2))
        throw std::invalid_argument("budget_exponent: x outside the family's valid range");
    switch (spec.family) {
        case BoundFamily::CliqueFactor:
            return Rational(spec.r - 1) - (Rational(spec.r, 2) - Rational(1)) * x;
        case BoundFamily::FFactor:
            return (spec.dstar * 2 - Rational(1)) - (spec.dstar - Rational(1)) * x;
        case BoundFamily::HamPower:
            return Rational(2 * spec.k - 1) - Rational(spec.k - 1) * x;
    }
    throw std::logic_error("budget_exponent: bad family");
}

std::vector<CurvePoint> curve_table(const std::vector<BoundSpec>& specs, int grid_points) {
    if (grid_points < 2) throw std::invalid_argument("curve_table: need at least 2 grid points");
    std::vector<CurvePoint> rows;
    for (const BoundSpec& s : specs) {
        double x0 = s.x_min().to_double();
        for (int i = 0; i < grid_points; ++i) {
            double xd = x0 + (2.0 - x0) * i / (grid_points - 1);
            // evaluate the affine form directly at the double grid point
            double y;
            switch (s.family) {
                case BoundFamily::CliqueFactor: y = (s.r - 1) - (s.r / 2.0 - 1.0) * xd; break;
                case BoundFamily::FFactor: {
                    double d = s.dstar.to_double();
                    y = (2 * d - 1) - (d - 1) * xd;
                    break;
                }
                case BoundFamily::HamPower: y = (2 * s.k - 1) - (s.k - 1) * xd; break;
                default: y = 0;
            }
            std::ostringstream param;
            if (s.family == BoundFamily::CliqueFactor) param << "r=" << s.r;
            else if (s.family == BoundFamily::FFactor) param << "dstar=" << s.dstar.str();
            else param << "k=" << s.k;
            rows.push_back(CurvePoint{s.family_label(), param.str(), xd, y, s.kind_label()});
        }
    }
    return rows;
}

std::string curve_table_csv(const std::vector<CurvePoint>& rows) {
    std::ostringstream os;
    os << "family,param,x,log_n_b,kind\n";
    char buf[64];
    for (const CurvePoint& r : rows) {
        os << r.family << ',' << r.param << ',';
        std::snprintf(buf, sizeof buf, "%.6f", r.x);
        os << buf << ',';
        std::snprintf(buf, sizeof buf, "%.6f", r.log_n_b);
        os << buf << ',' << r.kind << '\n';
    }
    return os.str();
}

double copy_count_threshold(const Graph& f, int n, long long t, long long budget, double lambda) {
    double v = f.n(), e = static_cast<double>(f.edge_count());
    return lambda * std::pow(static_cast<double>(budget), v - 1.0) *
           std::pow(static_cast<double>(t), e - v + 1.0) * std::pow(static_cast<double>(n), v - 2.0 * e - 1.0);
}

double minimal_lambda(const Graph& b, const Graph& f, long long t, long long budget, double eps) {
    int n = b.n();
    std::vector<int> alive(n);
    for (int i = 0; i < n; ++i) alive[i] = i;
    long long removals = static_cast<long long>(std::floor(eps * n));
    long long worst_after = 0;
    for (long long step = 0;; ++step) {
        Graph sub = induced_subgraph(b, alive);
        std::vector<long long> counts = count_copies_at_all(sub, f);
        long long worst = 0;
        int at = -1;
        for (int i = 0; i < sub.n(); ++i)
            if (counts[i] > worst) {
                worst = counts[i];
                at = i;
            }
        worst_after = worst;
        if (step >= removals || at < 0 || worst == 0) break;
        alive.erase(alive.begin() + at);
    }
    double unit = copy_count_threshold(f, n, t, budget, 1.0);
    return unit > 0 ? static_cast<double>(worst_after) / unit : 0.0;
}

CopyCountReport copy_count_statistic(const Graph& b, const Graph& f, long long t, long long budget,
                                     double lambda, double eps) {
    CopyCountReport rep;
    int n = b.n();
    rep.threshold = copy_count_threshold(f, n, t, budget, lambda);
    std::vector<int> alive(n);
    for (int i = 0; i < n; ++i) alive[i] = i;
    long long removed_cap = static_cast<long long>(std::floor(eps * n));
    long long removed = 0;
    for (;;) {
        Graph sub = induced_subgraph(b, alive);
        std::vector<long long> counts = count_copies_at_all(sub, f);
        long long worst = -1;
        int worst_at = -1;
        for (int i = 0; i < sub.n(); ++i) {
            if (counts[i] > worst) {
                worst = counts[i];
                worst_at = i;
            }
        }
        if (worst <= static_cast<long long>(rep.threshold) || alive.empty()) {
            rep.surviving = alive;
            rep.max_count = std::max<long long>(worst, 0);
            rep.fraction_below = static_cast<double>(alive.size()) / n;
            return rep;
        }
        if (removed + 1 > removed_cap) {
            rep.surviving = alive;
            rep.max_count = worst;
            rep.fraction_below = static_cast<double>(alive.size()) / n;
            return rep;
        }
        alive.erase(alive.begin() + worst_at);
        ++removed;
    }
}

}  // namespace bcgp
