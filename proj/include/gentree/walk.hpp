#ifndef GENTREE_WALK_HPP
#define GENTREE_WALK_HPP

#include <cmath>
#include <cstdint>
#include <mutex>
#include <numeric>
#include <vector>

#include "gentree/codec.hpp"
#include "gentree/errors.hpp"
#include "gentree/family.hpp"
#include "gentree/labels.hpp"
#include "gentree/rng.hpp"

namespace gentree {

// phi(t) = sum_y m_y t^{-y}, in closed form per family (radius 1 throughout).
inline double phi(const FamilySpec& F, double t) {
    if (!(t > 0.0) || !(t < 1.0)) throw DomainError("phi: t outside (0, 1)");
    switch (F.id) {
        case FamilyId::av123:
        case FamilyId::av132:
            return 1.0 / t + 1.0 / (1.0 - t);
        case FamilyId::famA:
            return 1.0 / t + t / (1.0 - t);
        case FamilyId::famB:
            return 1.0 / t + t / (1.0 - t * t);
        default:
            return 2.0 / t + 1.0 / (1.0 - t);
    }
}

inline double phi_prime(const FamilySpec& F, double t) {
    if (!(t > 0.0) || !(t < 1.0)) throw DomainError("phi_prime: t outside (0, 1)");
    switch (F.id) {
        case FamilyId::av123:
        case FamilyId::av132:
        case FamilyId::famA:
            return -1.0 / (t * t) + 1.0 / ((1.0 - t) * (1.0 - t));
        case FamilyId::famB: {
            double d = 1.0 - t * t;
            return -1.0 / (t * t) + (1.0 + t * t) / (d * d);
        }
        default:
            return -2.0 / (t * t) + 1.0 / ((1.0 - t) * (1.0 - t));
    }
}

// Series route for cross-checking the closed forms.
inline double phi_series(const FamilySpec& F, double t, double tol = 1e-16) {
    if (!(t > 0.0) || !(t < 1.0)) throw DomainError("phi_series: t outside (0, 1)");
    double sum = F.mult(1) / t + F.mult(0);
    for (int j = 1;; ++j) {
        double term = F.mult(-j) * std::pow(t, j);
        sum += term;
        if (std::pow(t, j) < tol && j > 4) break;
        if (j > 100000) break;
    }
    return sum;
}

// The tilted step law alpha_y = p q^y m_y with its color counts, plus the
// sampling tables. mass[i] is the probability of y = 1 - i; the table is
// extended until the untabulated tail is below 1e-18.
struct WalkParams {
    FamilyId family_id;
    int beta = 0;
    int span = 1;
    double t = 0, p = 0, q = 0;
    double variance = 0;
    std::vector<double> mass; // mass[i] = alpha(1 - i)
    std::vector<double> cdf;  // forward sampling table over mass
    double tabulated = 0;     // sum of mass

    const FamilySpec& spec() const { return family(family_id); }
    int y_of_index(std::size_t i) const { return 1 - static_cast<int>(i); }
    double alpha(int y) const {
        std::size_t i = static_cast<std::size_t>(1 - y);
        return (y <= 1 && i < mass.size()) ? mass[i] : 0.0;
    }
    int color_count(int y) const { return spec().color_count(y); }
    // total alpha mass strictly below -M (from the analytic tail of the table)
    double tail_below(int M) const {
        double s = 0;
        for (std::size_t i = static_cast<std::size_t>(1 + M + 1); i < mass.size(); ++i)
            s += mass[i];
        return s + (1.0 - tabulated);
    }
    double abs_moment_below(int M) const { // sum |y| alpha_y over y < -M
        double s = 0;
        for (std::size_t i = static_cast<std::size_t>(1 + M + 1); i < mass.size(); ++i)
            s += std::abs(1.0 - static_cast<double>(i)) * mass[i];
        return s;
    }
    double abs_moment() const {
        double s = 0;
        for (std::size_t i = 0; i < mass.size(); ++i)
            s += std::abs(1.0 - static_cast<double>(i)) * mass[i];
        return s;
    }
};

// Solve eq. p * sum q^y m_y = 1 with centered mean: t is the root of phi' in
// (0, 1), q = 1/t, p = 1/phi(t).
inline WalkParams solve_pq(const FamilySpec& F) {
    double lo = 1e-9, hi = 1.0 - 1e-9;
    double flo = phi_prime(F, lo);
    if (!(flo < 0.0) || !(phi_prime(F, hi) > 0.0))
        throw DomainError("solve_pq: no sign change of phi' on (0,1)");
    for (int it = 0; it < 200 && (hi - lo) > 1e-16; ++it) {
        double mid = 0.5 * (lo + hi);
        (phi_prime(F, mid) < 0.0 ? lo : hi) = mid;
    }
    WalkParams W;
    W.family_id = F.id;
    W.beta = F.beta;
    W.t = 0.5 * (lo + hi);
    if (std::abs(phi_prime(F, W.t)) > 1e-13)
        throw DomainError("solve_pq: bisection did not converge");
    W.q = 1.0 / W.t;
    W.p = 1.0 / phi(F, W.t);

    double qy = W.q; // q^y at y = 1
    double cum = 0;
    for (int y = 1;; --y) {
        double a = W.p * qy * F.mult(y);
        W.mass.push_back(a);
        cum += a;
        qy *= W.t; // q^{y-1}
        if (1.0 - cum < 1e-18 || y < -4000) break;
    }
    W.tabulated = cum;
    if (std::abs(cum - 1.0) > 1e-12) throw DomainError("solve_pq: masses do not sum to 1");
    // sum moments smallest-terms-first for accuracy
    double mean = 0, var = 0;
    for (std::size_t i = W.mass.size(); i-- > 0;) {
        double y = 1.0 - static_cast<double>(i);
        mean += y * W.mass[i];
        var += y * y * W.mass[i];
    }
    if (std::abs(mean) > 1e-10) throw DomainError("solve_pq: step law not centered");
    if (!(var > 0) || !std::isfinite(var)) throw DomainError("solve_pq: bad variance");
    W.variance = var;

    int span = 0, ytop = 0;
    for (std::size_t i = 0; i < W.mass.size(); ++i)
        if (W.mass[i] > 0) { ytop = W.y_of_index(i); break; }
    for (std::size_t i = 0; i < W.mass.size(); ++i)
        if (W.mass[i] > 0) span = std::gcd(span, ytop - W.y_of_index(i));
    W.span = span == 0 ? 1 : span;

    W.cdf.resize(W.mass.size());
    double acc = 0;
    for (std::size_t i = 0; i < W.mass.size(); ++i) {
        acc += W.mass[i];
        W.cdf[i] = acc;
    }
    W.cdf.back() = 1.0; // absorb the 1e-18 tail into the last entry
    return W;
}

inline const WalkParams& walk_params(FamilyId id) {
    static std::vector<WalkParams> cache;
    static std::once_flag flag;
    std::call_once(flag, [] {
        for (const auto& f : all_families()) cache.push_back(solve_pq(f));
    });
    for (const auto& w : cache)
        if (w.family_id == id) return w;
    throw DomainError("walk_params: unknown family");
}

struct StepMoments {
    double mean;
    double variance;
};

inline StepMoments step_moments(const WalkParams& W) {
    double mean = 0, var = 0;
    for (std::size_t i = W.mass.size(); i-- > 0;) {
        double y = 1.0 - static_cast<double>(i);
        mean += y * W.mass[i];
        var += y * y * W.mass[i];
    }
    return {mean, var};
}

// psi(t) = t phi'(t) / phi(t); Var = t psi'(t) at the critical t (Janson's
// moment identities), evaluated numerically as a cross-check route.
inline double variance_via_psi(const FamilySpec& F, double t) {
    auto psi = [&](double u) { return u * phi_prime(F, u) / phi(F, u); };
    double h = 1e-6;
    return t * (psi(t + h) - psi(t - h)) / (2 * h);
}

// A realized colored walk: positions X_1..X_N with X_1 = beta-1, and the
// color of each step (colors[i] belongs to the step into X_{i+2}... i.e.
// step i+1), matching the label-sequence convention.
struct ColoredWalk {
    std::vector<int> positions;
    std::vector<int> colors; // size positions.size() - 1
};

inline ColoredJump draw_step(const WalkParams& W, Rng& rng) {
    std::size_t i = sample_cdf(W.cdf, rng.uniform01());
    int y = W.y_of_index(i);
    int c = 1;
    int cc = W.color_count(y);
    if (cc > 1) c = 1 + static_cast<int>(rng.uniform_below(cc));
    return {y, c};
}

// Unconditioned colored walk of N positions.
inline ColoredWalk sample_walk(const WalkParams& W, int N, Rng& rng) {
    if (N < 1) throw DomainError("sample_walk: N must be >= 1");
    ColoredWalk w;
    w.positions.reserve(N);
    w.positions.push_back(W.beta - 1);
    for (int i = 1; i < N; ++i) {
        ColoredJump j = draw_step(W, rng);
        w.positions.push_back(w.positions.back() + j.y);
        w.colors.push_back(j.color);
    }
    return w;
}

namespace detail {

// Residue class of the label at step index j (1-based): positions move by
// steps congruent to 1 mod span.
inline int label_residue(const WalkParams& W, int j) {
    int r = ((W.beta - 1) + (j - 1)) % W.span;
    return (r % W.span + W.span) % W.span;
}

// Endpoint X_{N+1} = T of the conditioning. T must be reachable mod span and
// alpha_{T-k} must carry one fixed multiplicity over every reachable final
// label k, so the conditioned path law is exactly uniform. beta works for
// the eight classical-tree families; the barred families need beta-1 in the
// configurations where the jump to beta would have multiplicity zero.
inline int conditioning_target(const WalkParams& W, int N) {
    const FamilySpec& F = W.spec();
    int res = label_residue(W, N + 1);
    int kmax = (W.beta - 1) + (N - 1);
    for (int T : {W.beta, W.beta - 1}) {
        if (((T % W.span) + W.span) % W.span != res) continue;
        int m = -1;
        bool ok = true, any = false;
        if (N == 1) {
            m = F.mult(T - (W.beta - 1));
            any = true;
            ok = m >= 1;
        } else {
            for (int k = W.beta; k <= std::min(kmax, W.beta + 64); ++k) {
                if (detail::label_residue(W, N) != ((k % W.span) + W.span) % W.span) continue;
                int mk = F.mult(T - k);
                if (!any) { m = mk; any = true; }
                if (mk != m) { ok = false; break; }
            }
            ok = ok && any && m >= 1;
        }
        if (ok && any) return T;
    }
    throw FeasibilityError(F.name + ": no feasible conditioning endpoint for length " +
                           std::to_string(N));
}

} // namespace detail

// True if a conditioned walk of effective length N exists for this family.
inline bool conditioned_length_feasible(const WalkParams& W, int N) {
    if (N < 1) return false;
    try {
        detail::conditioning_target(W, N);
        return true;
    } catch (const FeasibilityError&) {
        return false;
    }
}

// Exact sampler by rejection: draw free walks of N steps, accept iff the
// positions stay >= beta on [2, N] and the endpoint X_{N+1} hits the target.
inline ColoredWalk sample_conditioned_rejection(const WalkParams& W, int N, Rng& rng,
                                                std::uint64_t step_budget = 1'000'000'000ULL) {
    if (N < 1) throw DomainError("sample_conditioned: N must be >= 1");
    int T = detail::conditioning_target(W, N);
    std::uint64_t steps = 0;
    ColoredWalk w;
    for (;;) {
        w.positions.assign(1, W.beta - 1);
        w.colors.clear();
        int x = W.beta - 1;
        bool ok = true;
        for (int i = 1; i <= N; ++i) {
            ColoredJump j = draw_step(W, rng);
            if (++steps > step_budget)
                throw ResourceError("sample_conditioned_rejection: step budget exceeded");
            x += j.y;
            if (i < N) {
                if (x < W.beta) { ok = false; break; }
                w.positions.push_back(x);
                w.colors.push_back(j.color);
            } else {
                if (x != T) { ok = false; break; }
            }
        }
        if (ok) return w;
    }
}

// Exact sampler via the cycle lemma on the reversed walk. Reversed steps lie
// in Z_{>= -1}; conditioned (by rejection) on their total, the unique cyclic
// rotation with admissible partial sums is selected. With endpoint beta the
// total is -1 and the rotation always exists; with endpoint beta-1 the total
// is 0 and classes without a strict cyclic minimum are rejected.
inline ColoredWalk sample_conditioned_cycle(const WalkParams& W, int N, Rng& rng,
                                            std::uint64_t step_budget = 1'000'000'000ULL) {
    if (N < 1) throw DomainError("sample_conditioned: N must be >= 1");
    int T = detail::conditioning_target(W, N);
    if (N == 1) return {{W.beta - 1}, {}};
    int total_fwd = T - (W.beta - 1); // 1 or 0
    int total_rev = -total_fwd;

    std::uint64_t steps = 0;
    std::vector<ColoredJump> rev(N);
    std::vector<long long> prefix(N + 1);
    for (;;) {
        long long sum = 0;
        for (int i = 0; i < N; ++i) {
            ColoredJump j = draw_step(W, rng);
            if (++steps > step_budget)
                throw ResourceError("sample_conditioned_cycle: step budget exceeded");
            rev[i] = {-j.y, j.color};
            sum += rev[i].y;
        }
        if (sum != total_rev) continue;
        prefix[0] = 0;
        for (int i = 0; i < N; ++i) prefix[i + 1] = prefix[i] + rev[i].y;
        // find the admissible rotation start r in [0, N-1]
        int r = -1;
        if (total_fwd == 1) {
            // unique first argmin of prefix over [0, N-1]
            long long best = prefix[0];
            r = 0;
            for (int j = 1; j < N; ++j)
                if (prefix[j] < best) { best = prefix[j]; r = j; }
        } else {
            // strict argmin or reject the draw
            long long best = prefix[0];
            r = 0;
            bool tie = false;
            for (int j = 1; j < N; ++j) {
                if (prefix[j] < best) { best = prefix[j]; r = j; tie = false; }
                else if (prefix[j] == best) tie = true;
            }
            if (tie) continue;
        }
        // rotate, reverse, negate back into forward steps
        ColoredWalk w;
        w.positions.reserve(N);
        w.positions.push_back(W.beta - 1);
        int x = W.beta - 1;
        for (int i = N - 1; i >= 1; --i) { // forward step i+... drop the conditioning step
            const ColoredJump& c = rev[(r + i) % N];
            x += -c.y;
            w.positions.push_back(x);
            w.colors.push_back(c.color);
        }
        return w;
    }
}

enum class SamplerKind { cycle, rejection };

inline ColoredWalk sample_conditioned(const WalkParams& W, int N, Rng& rng,
                                      SamplerKind kind = SamplerKind::cycle) {
    return kind == SamplerKind::cycle ? sample_conditioned_cycle(W, N, rng)
                                      : sample_conditioned_rejection(W, N, rng);
}

inline ColoredLabelSeq walk_to_labels(const ColoredWalk& w) {
    ColoredLabelSeq s;
    s.labels.reserve(w.positions.size());
    for (std::size_t i = 0; i < w.positions.size(); ++i)
        s.labels.push_back({w.positions[i], i == 0 ? 1 : w.colors[i - 1]});
    return s;
}

// Exactly uniform permutation of the given size.
inline Permutation uniform_permutation(const FamilySpec& F, int size, Rng& rng,
                                       SamplerKind kind = SamplerKind::cycle) {
    if (size < 1) throw DomainError("uniform_permutation: size must be >= 1");
    const WalkParams& W = walk_params(F.id);
    int N = size + (F.virtual_root ? 1 : 0);
    ColoredWalk w = sample_conditioned(W, N, rng, kind);
    ColoredLabelSeq s = walk_to_labels(w);
    return fast_decode_supported(F.id) ? decode_fast(F, s) : decode(F, s);
}

// Fraction of conditioned walks with X_i > c on [a, N-a] (the high-label
// event of the walk analysis, used as an empirical diagnostic).
inline double high_label_fraction(const FamilySpec& F, int N, int a, int c, int samples,
                                  Rng& rng) {
    const WalkParams& W = walk_params(F.id);
    int hits = 0;
    for (int s = 0; s < samples; ++s) {
        Rng r = rng.split(s);
        ColoredWalk w = sample_conditioned_cycle(W, N, r);
        bool ok = true;
        for (int i = a; i <= N - a && ok; ++i)
            if (w.positions[i - 1] <= c) ok = false;
        hits += ok ? 1 : 0;
    }
    return static_cast<double>(hits) / samples;
}

} // namespace gentree

#endif
