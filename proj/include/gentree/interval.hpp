#ifndef GENTREE_INTERVAL_HPP
#define GENTREE_INTERVAL_HPP

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace gentree {

// Closed interval [lo, hi] used to carry truncation error through the
// CLT-constant computations. Plain double endpoints; the truncation slack
// handled here is orders of magnitude above rounding error.
struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    Interval() = default;
    Interval(double lo_, double hi_) : lo(lo_), hi(hi_) {
        if (lo > hi) throw std::invalid_argument("Interval: lo > hi");
    }
    static Interval point(double x) { return Interval(x, x); }

    double mid() const { return 0.5 * (lo + hi); }
    double width() const { return hi - lo; }
    bool contains(double x) const { return lo <= x && x <= hi; }
    bool contains(const Interval& o) const { return lo <= o.lo && o.hi <= hi; }

    Interval operator+(const Interval& o) const { return {lo + o.lo, hi + o.hi}; }
    Interval operator-(const Interval& o) const { return {lo - o.hi, hi - o.lo}; }
    Interval operator*(double c) const {
        return c >= 0 ? Interval{lo * c, hi * c} : Interval{hi * c, lo * c};
    }
    // Range of x^2 over the interval.
    Interval sqr() const {
        double a = lo * lo, b = hi * hi;
        if (contains(0.0)) return {0.0, std::max(a, b)};
        return {std::min(a, b), std::max(a, b)};
    }
    // Division by a positive scalar.
    Interval div_pos(double c) const {
        if (c <= 0) throw std::invalid_argument("Interval: division by non-positive");
        return {lo / c, hi / c};
    }
};

// Range of the concave map x -> x - a*x^2 over [lo, hi] (a >= 0),
// used for beta^2 = 2*nu + mu - (2h-1)*mu^2.
inline Interval quad_mu_term(const Interval& mu, double a) {
    auto f = [a](double x) { return x - a * x * x; };
    double v1 = f(mu.lo), v2 = f(mu.hi);
    double lo = std::min(v1, v2), hi = std::max(v1, v2);
    if (a > 0) {
        double vertex = 1.0 / (2.0 * a);
        if (mu.contains(vertex)) hi = std::max(hi, f(vertex));
    }
    return {lo, hi};
}

} // namespace gentree

#endif
