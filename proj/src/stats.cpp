#include "bcgp/stats.hpp"

#include <cmath>
#include <stdexcept>

namespace bcgp {

namespace {

// regularized lower incomplete gamma P(a,x) by series expansion
double gamma_p_series(double a, double x) {
    double ap = a;
    double sum = 1.0 / a;
    double del = sum;
    for (int i = 0; i < 1000; ++i) {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if (std::fabs(del) < std::fabs(sum) * 1e-15) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// regularized upper incomplete gamma Q(a,x) by continued fraction
double gamma_q_cf(double a, double x) {
    const double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= 1000; ++i) {
        double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < 1e-15) break;
    }
    return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

double gamma_q(double a, double x) {
    if (x < 0.0 || a <= 0.0) throw std::invalid_argument("gamma_q: bad arguments");
    if (x == 0.0) return 1.0;
    if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
    return gamma_q_cf(a, x);
}

}  // namespace

double chi_square_p_value(double stat, int dof) {
    if (dof <= 0) throw std::invalid_argument("chi_square_p_value: dof must be positive");
    if (stat <= 0.0) return 1.0;
    return gamma_q(dof / 2.0, stat / 2.0);
}

double chi_square_stat(const std::vector<long long>& observed, const std::vector<double>& expected) {
    if (observed.size() != expected.size())
        throw std::invalid_argument("chi_square_stat: size mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < observed.size(); ++i) {
        if (expected[i] <= 0.0) throw std::invalid_argument("chi_square_stat: nonpositive expected count");
        double d = observed[i] - expected[i];
        s += d * d / expected[i];
    }
    return s;
}

}  // namespace bcgp
