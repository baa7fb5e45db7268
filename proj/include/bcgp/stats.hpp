#pragma once

#include <cstddef>
#include <vector>

namespace bcgp {

// upper-tail p-value of a chi-square statistic with `dof` degrees of freedom
double chi_square_p_value(double stat, int dof);

// Pearson statistic against given expected counts (must be positive)
double chi_square_stat(const std::vector<long long>& observed, const std::vector<double>& expected);

}  // namespace bcgp
