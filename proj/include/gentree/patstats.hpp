#ifndef GENTREE_PATSTATS_HPP
#define GENTREE_PATSTATS_HPP

#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "gentree/errors.hpp"
#include "gentree/interval.hpp"
#include "gentree/parallel.hpp"
#include "gentree/pat.hpp"
#include "gentree/permutation.hpp"
#include "gentree/rng.hpp"
#include "gentree/stats.hpp"
#include "gentree/walk.hpp"

namespace gentree {

// CLT constants of the fixed pattern pi, each as an interval absorbing the
// truncation of the jump alphabet at y >= -M.
struct PatternStats {
    Permutation pi;
    int M = 0;
    Interval mu;
    double sigma2_step = 0;
    Interval rho;
    Interval nu;
    Interval beta2;
    Interval gamma2;
    std::string method = "truncated-sum";
    double truncation_bound = 0; // tail mass bound backing the mu interval
};

namespace detail {

struct WeightedTuple {
    ColoredJumpSeq jumps;
    double weight; // product of alpha_y / c_y
};

// All colored tuples of the given length with every value in [-M, 1],
// invoking fn(tuple, weight).
template <typename Fn>
void enumerate_tuples(const WalkParams& W, int len, int M, Fn&& fn) {
    const FamilySpec& F = W.spec();
    std::vector<std::pair<ColoredJump, double>> alphabet;
    for (int y = 1; y >= -M; --y) {
        int m = F.mult(y);
        if (m < 1) continue;
        double w = W.alpha(y) / m;
        for (int c = 1; c <= m; ++c) alphabet.push_back({{y, c}, w});
    }
    ColoredJumpSeq cur;
    cur.jumps.resize(len);
    std::function<void(int, double)> rec = [&](int pos, double w) {
        if (pos == len) {
            fn(cur, w);
            return;
        }
        for (const auto& [j, jw] : alphabet) {
            cur.jumps[pos] = j;
            rec(pos + 1, w * jw);
        }
    };
    rec(0, 1.0);
}

inline double tail_of_length(const WalkParams& W, int M, int len) {
    double t1 = W.tail_below(M);
    return 1.0 - std::pow(1.0 - t1, len);
}

} // namespace detail

// Pushforward of Pat on tuples of length h truncated at -M: midpoint weights
// by pattern, plus the shared tail bound.
struct PatPushforward {
    std::unordered_map<Permutation, double, PermutationHash> weight;
    double tail = 0; // unexplored mass bound
};

inline PatPushforward pat_pushforward(const FamilySpec& F, int h, int M) {
    const WalkParams& W = walk_params(F.id);
    PatPushforward out;
    out.tail = detail::tail_of_length(W, M, h);
    detail::enumerate_tuples(W, h, M, [&](const ColoredJumpSeq& js, double w) {
        out.weight[pat_of_jumps(F, js)] += w;
    });
    return out;
}

// mu_pi = P(Pat(Y_1..Y_h) = pi) as [truncated sum, sum + tail].
inline Interval mu(const FamilySpec& F, const Permutation& pi, int M) {
    if (M < 1) throw DomainError("mu: truncation depth must be >= 1");
    PatPushforward pf = pat_pushforward(F, pi.size(), M);
    auto it = pf.weight.find(pi);
    double s = it == pf.weight.end() ? 0.0 : it->second;
    return {s, s + pf.tail};
}

// Full Theorem-constant computation: sigma^2, rho, nu, beta^2, gamma^2.
inline PatternStats gamma_sq(const FamilySpec& F, const Permutation& pi, int M) {
    if (M < 1) throw DomainError("gamma_sq: truncation depth must be >= 1");
    const WalkParams& W = walk_params(F.id);
    int h = pi.size();
    PatternStats st;
    st.pi = pi;
    st.M = M;
    st.sigma2_step = W.variance;

    // the truncated preimage Pat^{-1}(pi)
    std::vector<detail::WeightedTuple> A;
    double mu_sum = 0, rho_sum = 0, rho_alt = 0;
    detail::enumerate_tuples(W, h, M, [&](const ColoredJumpSeq& js, double w) {
        if (pat_of_jumps(F, js) != pi) return;
        A.push_back({js, w});
        mu_sum += w;
        long long s = 0;
        for (const auto& j : js.jumps) s += j.y;
        rho_sum += w * static_cast<double>(s);
        // Walk form of the same quantity: X_{h+1}+1 at beta = 0 is -1 + sum + 1.
        rho_alt += w * static_cast<double>(-1 + s + 1);
    });
    if (std::abs(rho_sum - rho_alt) > 1e-12)
        throw DomainError("gamma_sq: rho self-check failed");

    double tail_h = detail::tail_of_length(W, M, h);
    st.truncation_bound = tail_h;
    st.mu = Interval(mu_sum, mu_sum + tail_h);

    // |E[Z 1_missed]| <= h (E[|Y|; Y<-M] + E|Y| (h-1) P(Y<-M))
    double t1 = W.tail_below(M);
    double rho_slack = h * (W.abs_moment_below(M) + W.abs_moment() * (h - 1) * t1);
    st.rho = Interval(rho_sum - rho_slack, rho_sum + rho_slack);

    // nu: overlapping pairs of preimage tuples
    double nu_sum = 0, nu_tail = 0;
    if (h >= 2) {
        std::unordered_map<ColoredJumpSeq, std::vector<std::size_t>, ColoredJumpSeqHash> by_prefix;
        for (int s = 2; s <= h; ++s) {
            int olen = h - s + 1; // overlap length
            by_prefix.clear();
            for (std::size_t bi = 0; bi < A.size(); ++bi) {
                ColoredJumpSeq pre;
                pre.jumps.assign(A[bi].jumps.jumps.begin(), A[bi].jumps.jumps.begin() + olen);
                by_prefix[pre].push_back(bi);
            }
            for (const auto& a : A) {
                ColoredJumpSeq suf;
                suf.jumps.assign(a.jumps.jumps.begin() + (s - 1), a.jumps.jumps.end());
                auto it = by_prefix.find(suf);
                if (it == by_prefix.end()) continue;
                for (std::size_t bi : it->second) {
                    // P(combined tuple) = w(a) * product over b's non-overlap part
                    double w = a.weight;
                    const auto& bj = A[bi].jumps.jumps;
                    for (int i = olen; i < h; ++i)
                        w *= W.alpha(bj[i].y) / W.color_count(bj[i].y);
                    nu_sum += w;
                }
            }
            nu_tail += detail::tail_of_length(W, M, h + s - 1);
        }
    }
    st.nu = Interval(nu_sum, nu_sum + nu_tail);

    // beta^2 = 2 nu + mu - (2h-1) mu^2
    st.beta2 = st.nu * 2.0 + quad_mu_term(st.mu, 2.0 * h - 1.0);
    st.gamma2 = st.beta2 - st.rho.sqr().div_pos(st.sigma2_step);
    if (st.gamma2.hi < -1e-9)
        throw DomainError("gamma_sq: variance interval entirely negative");
    return st;
}

// Empirical pmf of Pat over 2h+1 i.i.d. colored jumps: the law of the
// radius-h restriction of the limiting rooted order.
inline std::map<Permutation, double> limit_order_restriction(const FamilySpec& F, int h,
                                                             std::int64_t trials, Rng& rng) {
    if (trials < 1) throw DomainError("limit_order_restriction: trials must be >= 1");
    const WalkParams& W = walk_params(F.id);
    std::unordered_map<ColoredJumpSeq, Permutation, ColoredJumpSeqHash> memo;
    std::map<Permutation, std::int64_t> counts;
    ColoredJumpSeq js;
    js.jumps.resize(2 * h + 1);
    for (std::int64_t t = 0; t < trials; ++t) {
        for (auto& j : js.jumps) j = draw_step(W, rng);
        auto it = memo.find(js);
        if (it == memo.end()) it = memo.emplace(js, pat_of_jumps(F, js)).first;
        ++counts[it->second];
    }
    std::map<Permutation, double> pmf;
    for (const auto& [p, c] : counts) pmf[p] = static_cast<double>(c) / trials;
    return pmf;
}

// Normalized consecutive-occurrence samples and their normality report.
struct CltReport {
    std::vector<double> values;
    double mu_hat = 0;
    double gamma2_hat = 0;
    double sample_mean = 0;
    double sample_variance = 0;
    double ks_distance = 0;
    double se_mean_boot = 0;
    double se_variance_boot = 0;
};

inline CltReport clt_sample(const FamilySpec& F, const Permutation& pi, int n, int reps,
                            Rng& rng, double mu_hat, double gamma2_hat,
                            int threads = default_threads()) {
    if (reps < 1) throw DomainError("clt_sample: reps must be >= 1");
    CltReport rep;
    rep.mu_hat = mu_hat;
    rep.gamma2_hat = gamma2_hat;
    rep.values.resize(reps);
    double sqn = std::sqrt(static_cast<double>(n));
    parallel_for(static_cast<std::size_t>(reps), threads, [&](std::size_t r) {
        Rng stream = rng.split(r);
        Permutation sigma = uniform_permutation(F, n, stream);
        rep.values[r] = (c_occ(pi, sigma) - n * mu_hat) / sqn;
    });
    MeanVar mv = mean_var(rep.values);
    rep.sample_mean = mv.mean;
    rep.sample_variance = mv.variance;
    rep.ks_distance = ks_distance(rep.values, std::sqrt(std::max(gamma2_hat, 1e-300)));
    Rng boot = rng.split(0xb001ULL);
    BootstrapSE se = bootstrap_se(rep.values, 200, boot);
    rep.se_mean_boot = se.se_mean;
    rep.se_variance_boot = se.se_variance;
    return rep;
}

} // namespace gentree

#endif
