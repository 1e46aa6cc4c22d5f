#include "etgoa/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include <boost/math/distributions/fisher_f.hpp>
#include <boost/math/distributions/students_t.hpp>

namespace etgoa {

namespace {

double mean_of(std::span<const double> xs) {
    return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

// unbiased sample variance
double variance_of(std::span<const double> xs, double mean) {
    double ss = 0.0;
    for (double x : xs) ss += (x - mean) * (x - mean);
    return ss / static_cast<double>(xs.size() - 1);
}

}  // namespace

WelchResult welch_t(std::span<const double> a, std::span<const double> b) {
    if (a.size() < 2 || b.size() < 2)
        throw std::invalid_argument("welch_t needs at least two values per sample");
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    const double ma = mean_of(a), mb = mean_of(b);
    const double va = variance_of(a, ma), vb = variance_of(b, mb);
    if (va == 0.0 && vb == 0.0)
        throw std::invalid_argument("welch_t: zero variance in both samples");

    const double sea = va / na, seb = vb / nb;
    const double se2 = sea + seb;
    WelchResult r;
    r.t = (ma - mb) / std::sqrt(se2);
    r.df = se2 * se2 / (sea * sea / (na - 1.0) + seb * seb / (nb - 1.0));
    const boost::math::students_t dist(r.df);
    r.p = 2.0 * boost::math::cdf(dist, -std::abs(r.t));
    return r;
}

AnovaResult anova_f(const std::vector<std::vector<double>>& groups) {
    if (groups.size() < 2) throw std::invalid_argument("anova_f needs at least two groups");
    std::size_t total = 0;
    for (const auto& g : groups) {
        if (g.size() < 2) throw std::invalid_argument("anova_f needs at least two values per group");
        total += g.size();
    }
    const double n = static_cast<double>(total);
    double grand = 0.0;
    for (const auto& g : groups) grand += std::accumulate(g.begin(), g.end(), 0.0);
    grand /= n;

    double ssb = 0.0, ssw = 0.0;
    for (const auto& g : groups) {
        const double m = mean_of(g);
        ssb += static_cast<double>(g.size()) * (m - grand) * (m - grand);
        for (double x : g) ssw += (x - m) * (x - m);
    }

    AnovaResult r;
    r.df_between = static_cast<double>(groups.size()) - 1.0;
    r.df_within = n - static_cast<double>(groups.size());
    if (ssw == 0.0) {
        if (ssb == 0.0)
            throw std::invalid_argument("anova_f: all values identical, F undefined");
        r.f = std::numeric_limits<double>::infinity();
        r.p = 0.0;
        return r;
    }
    r.f = (ssb / r.df_between) / (ssw / r.df_within);
    const boost::math::fisher_f dist(r.df_between, r.df_within);
    r.p = boost::math::cdf(boost::math::complement(dist, r.f));
    return r;
}

std::vector<double> holm_adjust(const std::vector<double>& pvalues) {
    const std::size_t m = pvalues.size();
    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t i, std::size_t j) { return pvalues[i] < pvalues[j]; });

    std::vector<double> adjusted(m, 0.0);
    double running = 0.0;
    for (std::size_t rank = 0; rank < m; ++rank) {
        const double scaled = static_cast<double>(m - rank) * pvalues[order[rank]];
        running = std::max(running, std::min(1.0, scaled));
        adjusted[order[rank]] = running;
    }
    return adjusted;
}

std::vector<PairwiseComparison> pairwise_welch(const std::vector<std::vector<double>>& groups) {
    std::vector<PairwiseComparison> out;
    for (std::size_t i = 0; i < groups.size(); ++i) {
        for (std::size_t j = i + 1; j < groups.size(); ++j) {
            const WelchResult w = welch_t(groups[i], groups[j]);
            out.push_back({i, j, w.t, w.df, w.p, w.p});
        }
    }
    std::vector<double> ps;
    ps.reserve(out.size());
    for (const auto& c : out) ps.push_back(c.p);
    const std::vector<double> adj = holm_adjust(ps);
    for (std::size_t k = 0; k < out.size(); ++k) out[k].p_adjusted = adj[k];
    return out;
}

}  // namespace etgoa
