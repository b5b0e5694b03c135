#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace cover::stats {

struct TestResult {
    double statistic = 0.0;
    double p_value = 1.0;
    std::size_t n = 0;
};

/// Mid-ranks (1-based) of the values; ties share the average of their positions.
std::vector<double> mid_ranks(std::span<const double> values);

/// Largest sample size for which the Wilcoxon p-value is enumerated exactly.
inline constexpr std::size_t kWilcoxonExactMax = 12;

/// Two-sided Wilcoxon signed-rank test on paired samples. Zero differences are dropped;
/// W = min(W+, W−). Exact enumeration of sign patterns for n <= 12, otherwise the normal
/// approximation with tie and continuity corrections.
/// Throws DegenerateInput when every difference is zero, std::invalid_argument when the
/// lengths differ or fewer than 5 non-zero differences remain.
TestResult wilcoxon_signed_rank(std::span<const double> x, std::span<const double> y);

/// Friedman test; matrix[i][j] is the value of method j in block i. Ranks within each
/// block use mid-ranks. p from the chi-square upper tail with k−1 degrees of freedom.
TestResult friedman_test(const std::vector<std::vector<double>>& matrix);

/// Upper tail of the chi-square distribution.
double chi_square_survival(double x, double dof);

}  // namespace cover::stats
