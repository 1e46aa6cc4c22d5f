#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace etgoa {

struct WelchResult {
    double t = 0.0;
    double df = 0.0;
    double p = 1.0;
};

// Welch unequal-variance t-test with Welch-Satterthwaite degrees of freedom
// and two-sided p. Requires n >= 2 per sample and nonzero variance in at
// least one; throws std::invalid_argument otherwise.
WelchResult welch_t(std::span<const double> a, std::span<const double> b);

struct AnovaResult {
    double f = 0.0;
    double df_between = 0.0;
    double df_within = 0.0;
    double p = 1.0;
};

// One-way ANOVA. Requires k >= 2 groups with n >= 2 each; throws when both
// the between- and within-group variation vanish (all values identical).
// Zero within-group variation with spread means yields f = inf, p = 0.
AnovaResult anova_f(const std::vector<std::vector<double>>& groups);

// Holm step-down adjustment; returns adjusted p-values in input order.
std::vector<double> holm_adjust(const std::vector<double>& pvalues);

struct PairwiseComparison {
    std::size_t i = 0;
    std::size_t j = 0;
    double t = 0.0;
    double df = 0.0;
    double p = 1.0;
    double p_adjusted = 1.0;
};

// All-pairs Welch tests with Holm correction, the post-hoc follow-up to
// anova_f.
std::vector<PairwiseComparison> pairwise_welch(const std::vector<std::vector<double>>& groups);

}  // namespace etgoa
