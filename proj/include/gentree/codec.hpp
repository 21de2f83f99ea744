#ifndef GENTREE_CODEC_HPP
#define GENTREE_CODEC_HPP

#include <algorithm>
#include <cstdint>
#include <deque>
#include <functional>
#include <vector>

#include "gentree/errors.hpp"
#include "gentree/family.hpp"
#include "gentree/labels.hpp"
#include "gentree/permutation.hpp"

namespace gentree {

namespace detail {

// (value, color) -> 1-based index among the active sites of a permutation
// with label k. This is the jump/site correspondence of the succession
// rules; it is validated against per-site label recomputation in the tests.
inline int site_index_of_label(const FamilySpec& F, int k, ColoredLabel child, int n_sites) {
    switch (F.id) {
        case FamilyId::av123:
        case FamilyId::av132:
            return child.value == k + 1 ? 1 : child.value;
        case FamilyId::famA:
        case FamilyId::famB:
            // callers use the site position directly (= child.value)
            return 0;
        default: // group: bottom, interiors 3..k, top
            if (child.color == 2) return n_sites;
            if (child.value == k + 1) return 1;
            return child.value - 1;
    }
}

// Inverse: the colored label produced by appending at the idx-th active site.
inline ColoredLabel label_of_site_index(const FamilySpec& F, int k, int idx, int n_sites,
                                        int site_pos) {
    switch (F.id) {
        case FamilyId::av123:
        case FamilyId::av132:
            return idx == 1 ? ColoredLabel{k + 1, 1} : ColoredLabel{idx, 1};
        case FamilyId::famA:
        case FamilyId::famB:
            return {site_pos, 1};
        default:
            if (idx == 1) return {k + 1, 1};
            if (idx == n_sites) return {k + 1, 2};
            return {idx + 1, 1};
    }
}

inline bool rule_has_child(const FamilySpec& F, int k, ColoredLabel c) {
    int y = c.value - k;
    if (c.value < F.beta) return false;
    int m = F.mult(y);
    return m >= 1 && c.color >= 1 && c.color <= m;
}

} // namespace detail

// The bijection (paper's G) from a consistent colored label sequence to the
// permutation at the end of the corresponding tree path. The sequence starts
// at the root label; for virtual-root families the synthetic root is part of
// the sequence and the result has size |s| - 1, otherwise size |s|.
inline Permutation decode(const FamilySpec& F, const ColoredLabelSeq& s) {
    const auto& L = s.labels;
    if (L.empty()) throw ConsistencyError("decode: empty sequence", 0);
    if (L[0].value != F.root_label || L[0].color != 1)
        throw ConsistencyError("decode: sequence must start at the root label " +
                                   std::to_string(F.root_label),
                               0);
    std::size_t i = 0;
    if (F.virtual_root) {
        if (L.size() < 2) throw ConsistencyError("decode: virtual root alone encodes nothing", 0);
        if (L[1].value != F.beta || L[1].color != 1)
            throw ConsistencyError("decode: first step must reach label " + std::to_string(F.beta),
                                   1);
        i = 1;
    }
    Permutation sigma({1});
    int k = L[i].value; // label of the size-1 permutation
    for (++i; i < L.size(); ++i) {
        ColoredLabel target = L[i];
        if (!detail::rule_has_child(F, k, target))
            throw ConsistencyError("decode: label " + std::to_string(target.value) +
                                       " is not a child of " + std::to_string(k),
                                   i);
        int m;
        if (F.label_mode == LabelMode::last_value) {
            m = target.value;
        } else {
            std::vector<int> sites = active_sites(sigma, F);
            if (static_cast<int>(sites.size()) != k)
                throw DomainError("decode: site count disagrees with label (internal)");
            int idx = detail::site_index_of_label(F, k, target, static_cast<int>(sites.size()));
            if (idx < 1 || idx > static_cast<int>(sites.size()))
                throw ConsistencyError("decode: no site for label", i);
            m = sites[idx - 1];
        }
        sigma = append_final(sigma, m);
        k = target.value;
    }
    return sigma;
}

// Inverse of decode: strip final values, record which active site each step
// used, and translate site indices back into colored labels.
inline ColoredLabelSeq encode(const FamilySpec& F, const Permutation& sigma) {
    int n = sigma.size();
    // peel the permutation down to its prefixes; prefix[p] has size p+1
    std::vector<std::vector<int>> prefixes(n);
    prefixes[n - 1] = sigma.values();
    for (int p = n - 1; p >= 1; --p) {
        std::vector<int> cur = prefixes[p];
        int last = cur.back();
        cur.pop_back();
        for (int& x : cur)
            if (x > last) --x;
        prefixes[p - 1] = std::move(cur);
    }
    ColoredLabelSeq out;
    if (F.virtual_root) out.labels.push_back({F.root_label, 1});
    out.labels.push_back({F.orig_root_label, 1});
    int k = F.orig_root_label;
    for (int p = 1; p < n; ++p) {
        Permutation pref(std::vector<int>(prefixes[p - 1]), Permutation::unchecked_t{});
        int m = prefixes[p].back(); // the site the next value was appended at
        std::vector<int> sites = active_sites(pref, F);
        auto it = std::lower_bound(sites.begin(), sites.end(), m);
        if (it == sites.end() || *it != m)
            throw MembershipError(F.name + ": permutation " + sigma.str() +
                                  " is not in the family (prefix of size " + std::to_string(p) +
                                  " has no active site " + std::to_string(m) + ")");
        int idx = static_cast<int>(it - sites.begin()) + 1;
        ColoredLabel child =
            detail::label_of_site_index(F, k, idx, static_cast<int>(sites.size()), m);
        out.labels.push_back(child);
        k = child.value;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Level enumeration: all consistent colored label sequences encoding the
// permutations of a given size.
// ---------------------------------------------------------------------------

inline std::uint64_t level_count(const FamilySpec& F, int n) {
    // count paths of the label DP; labels at permutation size p are <= p+1
    std::vector<std::uint64_t> cur(n + 3, 0);
    cur[F.orig_root_label] = 1;
    for (int p = 1; p < n; ++p) {
        std::vector<std::uint64_t> next(n + 3, 0);
        for (int k = 0; k <= p + 1; ++k) {
            if (!cur[k]) continue;
            for (const auto& c : F.rule_children(k))
                if (c.value <= n + 1) next[c.value] += cur[k];
        }
        cur = std::move(next);
    }
    std::uint64_t total = 0;
    for (auto c : cur) total += c;
    return total;
}

inline std::vector<ColoredLabelSeq> enumerate_level(const FamilySpec& F, int n,
                                                    std::uint64_t cap = 10'000'000) {
    if (n < 1) throw DomainError("enumerate_level: n must be >= 1");
    std::uint64_t count = level_count(F, n);
    if (count > cap)
        throw ResourceError("enumerate_level: level has " + std::to_string(count) +
                            " sequences, over the cap of " + std::to_string(cap));
    std::vector<ColoredLabelSeq> out;
    out.reserve(count);
    ColoredLabelSeq seq;
    if (F.virtual_root) seq.labels.push_back({F.root_label, 1});
    seq.labels.push_back({F.orig_root_label, 1});
    std::size_t target = n + (F.virtual_root ? 1 : 0);
    std::function<void()> dfs = [&]() {
        if (seq.labels.size() == target) {
            out.push_back(seq);
            return;
        }
        for (const auto& c : F.rule_children(seq.labels.back().value)) {
            seq.labels.push_back(c);
            dfs();
            seq.labels.pop_back();
        }
    };
    dfs();
    return out;
}

// ---------------------------------------------------------------------------
// Large-n decode. Site positions are produced jump-by-jump in O(1) amortized
// per step (formulaic for av123/famA/famB, a tracked site deque for
// av1423-4123), then the permutation is materialized in one O(n log n) pass.
// Checked against decode() on full levels and random walks in the tests.
// ---------------------------------------------------------------------------

namespace detail {

// Fenwick "find k-th free slot" materialization: processing appends in
// reverse, element t gets the s_t-th smallest still-free final value.
inline Permutation materialize_appends(const std::vector<int>& sites) {
    int n = static_cast<int>(sites.size());
    std::vector<int> bit(n + 1, 0);
    auto update = [&](int i, int d) {
        for (; i <= n; i += i & (-i)) bit[i] += d;
    };
    for (int i = 1; i <= n; ++i) update(i, 1);
    int logn = 1;
    while ((1 << logn) <= n) ++logn;
    auto kth = [&](int k) {
        int pos = 0;
        for (int step = 1 << logn; step; step >>= 1)
            if (pos + step <= n && bit[pos + step] < k) {
                pos += step;
                k -= bit[pos];
            }
        return pos + 1;
    };
    std::vector<int> vals(n);
    for (int t = n; t >= 1; --t) {
        int v = kth(sites[t - 1]);
        vals[t - 1] = v;
        update(v, -1);
    }
    return Permutation(std::move(vals), Permutation::unchecked_t{});
}

// Active-site tracker for the Av(1423,4123) family: bottom (1) and top (n+1)
// are always active; the interior sites are kept as a deque with a global
// shift so every succession-rule case is O(1) amortized.
class GroupSiteTracker {
  public:
    GroupSiteTracker() : size_(1), offset_(0) {}
    int label() const { return static_cast<int>(interior_.size()) + 2; }
    // appends at the site selected by (value, color); returns the position
    int apply(ColoredLabel c) {
        int k = label();
        int m;
        if (c.color == 2) { // top
            m = size_ + 1;
            interior_.push_back(m - offset_);
        } else if (c.value == k + 1) { // bottom
            m = 1;
            ++offset_;
            interior_.push_front(2 - offset_);
        } else { // interior label v -> site index v-1
            int j = c.value - 1;
            m = interior_[j - 2] + offset_;
            interior_.resize(j - 1);
        }
        ++size_;
        return m;
    }

  private:
    int size_;
    int offset_;
    std::deque<int> interior_;
};

} // namespace detail

inline bool fast_decode_supported(FamilyId id) {
    return id == FamilyId::av123 || id == FamilyId::famA || id == FamilyId::famB ||
           id == FamilyId::av1423_4123;
}

inline Permutation decode_fast(const FamilySpec& F, const ColoredLabelSeq& s) {
    if (!fast_decode_supported(F.id)) return decode(F, s);
    const auto& L = s.labels;
    if (L.empty() || L[0].value != F.root_label)
        throw ConsistencyError("decode: sequence must start at the root label", 0);
    std::size_t i = F.virtual_root ? 1 : 0;
    if (i >= L.size()) throw ConsistencyError("decode: virtual root alone encodes nothing", 0);
    if (F.virtual_root && L[i].value != F.beta)
        throw ConsistencyError("decode: first step must reach label beta", 1);

    std::vector<int> sites;
    sites.reserve(L.size() - i);
    sites.push_back(1); // the size-1 permutation
    detail::GroupSiteTracker tracker;
    int k = L[i].value;
    for (++i; i < L.size(); ++i) {
        ColoredLabel t = L[i];
        if (!detail::rule_has_child(F, k, t))
            throw ConsistencyError("decode: label " + std::to_string(t.value) +
                                       " is not a child of " + std::to_string(k),
                                   i);
        switch (F.id) {
            case FamilyId::av123:
                sites.push_back(t.value == k + 1 ? 1 : t.value);
                break;
            case FamilyId::famA:
            case FamilyId::famB:
                sites.push_back(t.value);
                break;
            default:
                sites.push_back(tracker.apply(t));
                break;
        }
        k = t.value;
    }
    return detail::materialize_appends(sites);
}

} // namespace gentree

#endif
