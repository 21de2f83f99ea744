#ifndef GENTREE_ORACLE_HPP
#define GENTREE_ORACLE_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "gentree/codec.hpp"
#include "gentree/errors.hpp"
#include "gentree/family.hpp"
#include "gentree/permutation.hpp"
#include "gentree/rng.hpp"
#include "gentree/stats.hpp"
#include "gentree/walk.hpp"

namespace gentree {

// Ground-truth level of a family: every member of a given size.
struct ExactLevel {
    FamilyId family_id;
    int n = 0;
    std::vector<Permutation> members; // sorted
    std::uint64_t count = 0;
};

inline constexpr int kBruteSizeCap = 12;

// Exhaustive enumeration by growing along active sites. The filter route
// below is the independent check that growth misses nothing.
inline ExactLevel brute_enumerate(const FamilySpec& F, int n) {
    if (n < 1 || n > kBruteSizeCap)
        throw ResourceError("brute_enumerate: size outside [1, " + std::to_string(kBruteSizeCap) +
                            "]");
    std::vector<Permutation> level{Permutation({1})};
    for (int size = 1; size < n; ++size) {
        std::vector<Permutation> next;
        next.reserve(level.size() * 2);
        for (const auto& sigma : level)
            for (int m : active_sites(sigma, F)) next.push_back(append_final(sigma, m));
        level = std::move(next);
    }
    std::sort(level.begin(), level.end());
    ExactLevel out;
    out.family_id = F.id;
    out.n = n;
    out.count = level.size();
    out.members = std::move(level);
    return out;
}

// n!-filter route (cross-check only; n <= 9 guarded).
inline ExactLevel brute_enumerate_filter(const FamilySpec& F, int n) {
    if (n < 1 || n > 9) throw ResourceError("brute_enumerate_filter: n outside [1, 9]");
    std::vector<int> vals(n);
    std::iota(vals.begin(), vals.end(), 1);
    ExactLevel out;
    out.family_id = F.id;
    out.n = n;
    do {
        Permutation sigma{std::vector<int>(vals)};
        if (member(sigma, F)) out.members.push_back(sigma);
    } while (std::next_permutation(vals.begin(), vals.end()));
    out.count = out.members.size();
    return out;
}

struct BijectionReport {
    bool ok = false;
    std::uint64_t level_sequences = 0;
    std::uint64_t brute_count = 0;
    std::string detail;
};

// decode is a bijection from the level's label sequences onto the brute
// level, and encode inverts it, sequence by sequence.
inline BijectionReport verify_bijection(const FamilySpec& F, int n) {
    BijectionReport rep;
    ExactLevel level = brute_enumerate(F, n);
    std::vector<ColoredLabelSeq> seqs = enumerate_level(F, n);
    rep.level_sequences = seqs.size();
    rep.brute_count = level.count;
    if (seqs.size() != level.count) {
        rep.detail = "sequence count != member count";
        return rep;
    }
    std::vector<Permutation> decoded;
    decoded.reserve(seqs.size());
    for (const auto& s : seqs) {
        Permutation sigma = decode(F, s);
        ColoredLabelSeq back = encode(F, sigma);
        if (!(back == s)) {
            rep.detail = "encode(decode(s)) != s for s = " + s.str();
            return rep;
        }
        decoded.push_back(std::move(sigma));
    }
    std::sort(decoded.begin(), decoded.end());
    for (std::size_t i = 1; i < decoded.size(); ++i)
        if (decoded[i] == decoded[i - 1]) {
            rep.detail = "decode not injective at " + decoded[i].str();
            return rep;
        }
    if (decoded != level.members) {
        rep.detail = "decoded set differs from brute enumeration";
        return rep;
    }
    rep.ok = true;
    return rep;
}

// Chi-square uniformity of a conditioned sampler against the exact level.
inline ChiSquareReport verify_sampler(const FamilySpec& F, int n, std::uint64_t trials, Rng& rng,
                                      SamplerKind kind = SamplerKind::cycle) {
    ExactLevel level = brute_enumerate(F, n);
    if (trials < 20 * level.count)
        throw DomainError("verify_sampler: trials must give expected cell counts >= 20");
    std::unordered_map<Permutation, std::size_t, PermutationHash> index;
    for (std::size_t i = 0; i < level.members.size(); ++i) index[level.members[i]] = i;
    std::vector<std::uint64_t> counts(level.count, 0);
    const WalkParams& W = walk_params(F.id);
    int N = n + (F.virtual_root ? 1 : 0);
    // decode table keyed by label sequence
    std::unordered_map<ColoredLabelSeq, std::size_t, ColoredLabelSeqHash> table;
    for (const auto& s : enumerate_level(F, n)) table[s] = index.at(decode(F, s));
    for (std::uint64_t t = 0; t < trials; ++t) {
        Rng stream = rng.split(t);
        ColoredWalk w = sample_conditioned(W, N, stream, kind);
        auto it = table.find(walk_to_labels(w));
        if (it == table.end()) throw DomainError("verify_sampler: sampled walk decodes nowhere");
        ++counts[it->second];
    }
    std::vector<double> probs(level.count, 1.0 / static_cast<double>(level.count));
    return chi_square_gof(counts, probs, trials);
}

// Exact law of c-occ(pi, .) under the uniform distribution on the level.
struct CcoccPmf {
    std::map<int, double> pmf;
    double mean = 0;
};

inline CcoccPmf exact_ccocc_pmf(const FamilySpec& F, int n, const Permutation& pi) {
    ExactLevel level = brute_enumerate(F, n);
    CcoccPmf out;
    std::map<int, std::uint64_t> counts;
    for (const auto& sigma : level.members) ++counts[c_occ(pi, sigma)];
    for (const auto& [k, c] : counts) {
        double p = static_cast<double>(c) / static_cast<double>(level.count);
        out.pmf[k] = p;
        out.mean += k * p;
    }
    return out;
}

// Lattice paths from (0,0) to (n, floor(n/2)) with unit steps never going
// above y = x/2; the independent count the famB levels are checked against.
inline std::uint64_t lattice_paths_below_halfline(int n) {
    int ymax = n / 2;
    std::vector<std::vector<std::uint64_t>> f(n + 1, std::vector<std::uint64_t>(ymax + 1, 0));
    f[0][0] = 1;
    for (int x = 0; x <= n; ++x)
        for (int y = 0; y <= ymax; ++y) {
            if (x == 0 && y == 0) continue;
            if (2 * y > x) { f[x][y] = 0; continue; }
            std::uint64_t v = 0;
            if (x > 0) v += f[x - 1][y];
            if (y > 0) v += f[x][y - 1];
            f[x][y] = v;
        }
    return f[n][ymax];
}

// Line-delimited one-line-notation export.
inline std::string level_to_text(const ExactLevel& level) {
    std::ostringstream os;
    for (const auto& p : level.members) os << p.str() << '\n';
    return os.str();
}

} // namespace gentree

#endif
