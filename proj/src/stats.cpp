#include "cover/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include <boost/math/distributions/chi_squared.hpp>

#include "cover/error.hpp"

namespace cover::stats {

std::vector<double> mid_ranks(std::span<const double> values) {
    const std::size_t n = values.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    std::vector<double> ranks(n);
    for (std::size_t i = 0; i < n;) {
        std::size_t j = i;
        while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
        const double r = 0.5 * static_cast<double>(i + j) + 1.0;
        for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = r;
        i = j + 1;
    }
    return ranks;
}

double chi_square_survival(double x, double dof) {
    if (x <= 0.0) return 1.0;
    return boost::math::cdf(boost::math::complement(boost::math::chi_squared(dof), x));
}

TestResult wilcoxon_signed_rank(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw std::invalid_argument("wilcoxon: samples must have equal length");
    std::vector<double> diffs;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double d = x[i] - y[i];
        if (d != 0.0) diffs.push_back(d);
    }
    if (diffs.empty()) throw DegenerateInput("wilcoxon: all differences are zero");
    const std::size_t n = diffs.size();
    if (n < 5) throw std::invalid_argument("wilcoxon: fewer than 5 non-zero differences");

    std::vector<double> magnitudes(n);
    std::transform(diffs.begin(), diffs.end(), magnitudes.begin(), [](double d) { return std::abs(d); });
    const std::vector<double> ranks = mid_ranks(magnitudes);
    double w_plus = 0.0;
    double w_minus = 0.0;
    for (std::size_t i = 0; i < n; ++i) (diffs[i] > 0.0 ? w_plus : w_minus) += ranks[i];
    const double w = std::min(w_plus, w_minus);

    TestResult result;
    result.statistic = w;
    result.n = n;
    if (n <= kWilcoxonExactMax) {
        // Every sign pattern is equally likely under H0. Ranks are multiples of ½.
        const double total = w_plus + w_minus;
        std::uint64_t extreme = 0;
        const std::uint64_t patterns = std::uint64_t{1} << n;
        for (std::uint64_t mask = 0; mask < patterns; ++mask) {
            double plus = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                if (mask & (std::uint64_t{1} << i)) plus += ranks[i];
            }
            if (std::min(plus, total - plus) <= w + 1e-9) ++extreme;
        }
        result.p_value = static_cast<double>(extreme) / static_cast<double>(patterns);
    } else {
        const double nn = static_cast<double>(n);
        const double mean = nn * (nn + 1.0) / 4.0;
        double tie_term = 0.0;
        std::vector<double> sorted = magnitudes;
        std::sort(sorted.begin(), sorted.end());
        for (std::size_t i = 0; i < n;) {
            std::size_t j = i;
            while (j + 1 < n && sorted[j + 1] == sorted[i]) ++j;
            const double t = static_cast<double>(j - i + 1);
            tie_term += t * t * t - t;
            i = j + 1;
        }
        const double variance = nn * (nn + 1.0) * (2.0 * nn + 1.0) / 24.0 - tie_term / 48.0;
        const double z = std::max(0.0, std::abs(w - mean) - 0.5) / std::sqrt(variance);
        result.p_value = std::erfc(z / std::sqrt(2.0));
    }
    result.p_value = std::clamp(result.p_value, 0.0, 1.0);
    return result;
}

TestResult friedman_test(const std::vector<std::vector<double>>& matrix) {
    const std::size_t n = matrix.size();
    if (n < 2) throw std::invalid_argument("friedman: need at least 2 blocks");
    const std::size_t k = matrix.front().size();
    if (k < 3) throw std::invalid_argument("friedman: need at least 3 methods");
    std::vector<double> rank_sums(k, 0.0);
    for (const auto& row : matrix) {
        if (row.size() != k) throw std::invalid_argument("friedman: ragged matrix");
        const auto ranks = mid_ranks(row);
        for (std::size_t j = 0; j < k; ++j) rank_sums[j] += ranks[j];
    }
    const double nn = static_cast<double>(n);
    const double kk = static_cast<double>(k);
    double sum_sq = 0.0;
    for (double r : rank_sums) sum_sq += r * r;
    double chi2 = 12.0 / (nn * kk * (kk + 1.0)) * sum_sq - 3.0 * nn * (kk + 1.0);
    // Constant blocks give exactly zero in exact arithmetic.
    if (std::abs(chi2) < 1e-9 * nn * kk) chi2 = 0.0;
    return {chi2, std::clamp(chi_square_survival(chi2, kk - 1.0), 0.0, 1.0), n};
}

}  // namespace cover::stats
