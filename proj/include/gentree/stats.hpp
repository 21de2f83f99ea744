#ifndef GENTREE_STATS_HPP
#define GENTREE_STATS_HPP

#include <algorithm>
#include <cmath>
#include <map>
#include <vector>

#include "gentree/errors.hpp"
#include "gentree/rng.hpp"

namespace gentree {

inline double normal_cdf(double x, double sigma = 1.0) {
    return 0.5 * std::erfc(-x / (sigma * std::sqrt(2.0)));
}

namespace detail {

// Regularized incomplete gamma P(a, x) by series, Q(a, x) by continued
// fraction (Lentz), the usual split at x < a + 1.
inline double gamma_p_series(double a, double x) {
    double ap = a, sum = 1.0 / a, del = sum;
    for (int n = 0; n < 500; ++n) {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if (std::abs(del) < std::abs(sum) * 1e-15) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

inline double gamma_q_cf(double a, double x) {
    const double tiny = 1e-300;
    double b = x + 1.0 - a, c = 1.0 / tiny, d = 1.0 / b, h = d;
    for (int i = 1; i < 500; ++i) {
        double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < 1e-15) break;
    }
    return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

} // namespace detail

inline double gamma_q(double a, double x) {
    if (x < 0 || a <= 0) throw DomainError("gamma_q: bad arguments");
    if (x == 0) return 1.0;
    if (x < a + 1.0) return 1.0 - detail::gamma_p_series(a, x);
    return detail::gamma_q_cf(a, x);
}

// Upper-tail p-value of a chi-square statistic with df degrees of freedom.
inline double chi_square_pvalue(double stat, double df) {
    return gamma_q(df / 2.0, stat / 2.0);
}

struct ChiSquareReport {
    double statistic = 0;
    double df = 0;
    double pvalue = 1;
    std::size_t classes = 0;
    std::size_t trials = 0;
};

// Goodness of fit of observed counts against given class probabilities.
inline ChiSquareReport chi_square_gof(const std::vector<std::uint64_t>& counts,
                                      const std::vector<double>& probs, std::uint64_t trials) {
    ChiSquareReport r;
    r.classes = counts.size();
    r.trials = trials;
    double stat = 0;
    for (std::size_t i = 0; i < counts.size(); ++i) {
        double expected = probs[i] * trials;
        double d = counts[i] - expected;
        stat += d * d / expected;
    }
    r.statistic = stat;
    r.df = static_cast<double>(counts.size() - 1);
    r.pvalue = chi_square_pvalue(stat, r.df);
    return r;
}

struct MeanVar {
    double mean = 0;
    double variance = 0; // unbiased
};

inline MeanVar mean_var(const std::vector<double>& xs) {
    MeanVar mv;
    if (xs.empty()) return mv;
    double s = 0;
    for (double x : xs) s += x;
    mv.mean = s / xs.size();
    double ss = 0;
    for (double x : xs) ss += (x - mv.mean) * (x - mv.mean);
    mv.variance = xs.size() > 1 ? ss / (xs.size() - 1) : 0.0;
    return mv;
}

// One-sample Kolmogorov-Smirnov distance to N(0, sigma^2).
inline double ks_distance(std::vector<double> xs, double sigma) {
    std::sort(xs.begin(), xs.end());
    double n = static_cast<double>(xs.size());
    double d = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        double F = normal_cdf(xs[i], sigma);
        d = std::max(d, std::abs(F - (i + 1) / n));
        d = std::max(d, std::abs(F - i / n));
    }
    return d;
}

// Total variation between two empirical distributions over a keyed space.
template <typename Map>
double tv_distance(const Map& a, const Map& b) {
    double tv = 0;
    for (const auto& [k, p] : a) {
        auto it = b.find(k);
        tv += std::abs(p - (it == b.end() ? 0.0 : it->second));
    }
    for (const auto& [k, p] : b)
        if (a.find(k) == a.end()) tv += p;
    return 0.5 * tv;
}

// Bootstrap standard errors of the sample mean and sample variance.
struct BootstrapSE {
    double se_mean = 0;
    double se_variance = 0;
};

inline BootstrapSE bootstrap_se(const std::vector<double>& xs, int B, Rng& rng) {
    BootstrapSE out;
    if (xs.size() < 2) return out;
    std::vector<double> means(B), vars(B), resample(xs.size());
    for (int b = 0; b < B; ++b) {
        for (std::size_t i = 0; i < xs.size(); ++i)
            resample[i] = xs[rng.uniform_below(xs.size())];
        MeanVar mv = mean_var(resample);
        means[b] = mv.mean;
        vars[b] = mv.variance;
    }
    out.se_mean = std::sqrt(mean_var(means).variance);
    out.se_variance = std::sqrt(mean_var(vars).variance);
    return out;
}

} // namespace gentree

#endif
