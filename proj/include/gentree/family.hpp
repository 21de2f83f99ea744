#ifndef GENTREE_FAMILY_HPP
#define GENTREE_FAMILY_HPP

#include <algorithm>
#include <initializer_list>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "gentree/errors.hpp"
#include "gentree/labels.hpp"
#include "gentree/permutation.hpp"

namespace gentree {

enum class FamilyId {
    av123,
    av132,
    av1423_4123,
    av1234_2134,
    av1324_3124,
    av2314_3214,
    av2413_4213,
    av3412_4312,
    famA,
    famB,
};

// How a child's label is read off the grown permutation. The six families
// sharing the Av(1423,4123) tree and both Av(123)-tree families are labeled
// by the active-site count; the two barred families are labeled by the last
// value of the permutation.
enum class LabelMode { site_count, last_value };

struct FamilySpec {
    FamilyId id;
    std::string name;
    int beta;            // labels are >= beta except the root
    int root_label;      // lambda = beta - 1
    int orig_root_label; // label of the size-1 permutation
    bool virtual_root;   // a synthetic root label is prepended
    int span;
    bool colored; // repeated child labels exist (m_1 = 2)
    LabelMode label_mode;
    std::vector<GeneralizedPattern> avoidance;

    // Multiplicity m_y of the jump y in the stable region (Eq. (8) form).
    int mult(int y) const {
        if (y > 1) return 0;
        switch (id) {
            case FamilyId::av123:
            case FamilyId::av132:
                return 1;
            case FamilyId::famA:
                return y == 0 ? 0 : 1;
            case FamilyId::famB:
                return ((1 - y) % 2 == 0) ? 1 : 0; // odd jumps only
            default: // Av(1423,4123) group
                return y == 1 ? 2 : 1;
        }
    }
    int color_count(int y) const { return mult(y); }

    // Assumption-3 threshold. h+1 is proved for the Av(1423,4123) group and
    // used as the policy for the rest (validated by the window checks).
    int c_of_h(int h) const { return h + 1; }

    // Ordered colored child list of a label k >= root_label. For the colored
    // group and the barred families the listing is in ascending appended-site
    // order; for av123/av132 it is the ascending-label form of the rule.
    std::vector<ColoredLabel> rule_children(int k) const {
        if (k < root_label)
            throw DomainError(name + ": label " + std::to_string(k) + " not in the tree");
        std::vector<ColoredLabel> out;
        switch (id) {
            case FamilyId::av123:
            case FamilyId::av132:
                for (int v = 2; v <= k + 1; ++v) out.push_back({v, 1});
                break;
            case FamilyId::famA:
                for (int v = 1; v <= k - 1; ++v) out.push_back({v, 1});
                out.push_back({k + 1, 1});
                break;
            case FamilyId::famB:
                for (int v = 1; v <= k + 1; ++v)
                    if ((k - v) % 2 != 0) out.push_back({v, 1});
                break;
            default: // group: (k+1)^B, (3), ..., (k), (k+1)^T
                out.push_back({k + 1, 1});
                for (int v = 3; v <= k; ++v) out.push_back({v, 1});
                out.push_back({k + 1, 2});
                break;
        }
        return out;
    }

    bool is_group() const {
        return id != FamilyId::av123 && id != FamilyId::av132 && id != FamilyId::famA &&
               id != FamilyId::famB;
    }
};

namespace detail {

inline Permutation perm(std::initializer_list<int> v) { return Permutation(std::vector<int>(v)); }

inline std::vector<FamilySpec> make_families() {
    using GP = GeneralizedPattern;
    auto avoid2 = [](std::initializer_list<int> a, std::initializer_list<int> b) {
        return std::vector<GP>{GP::classical(perm(a)), GP::classical(perm(b))};
    };
    std::vector<FamilySpec> fs;
    fs.push_back({FamilyId::av123, "av123", 2, 1, 2, true, 1, false, LabelMode::site_count,
                  {GP::classical(perm({1, 2, 3}))}});
    fs.push_back({FamilyId::av132, "av132", 2, 1, 2, true, 1, false, LabelMode::site_count,
                  {GP::classical(perm({1, 3, 2}))}});
    fs.push_back({FamilyId::av1423_4123, "av1423-4123", 3, 2, 2, false, 1, true,
                  LabelMode::site_count, avoid2({1, 4, 2, 3}, {4, 1, 2, 3})});
    fs.push_back({FamilyId::av1234_2134, "av1234-2134", 3, 2, 2, false, 1, true,
                  LabelMode::site_count, avoid2({1, 2, 3, 4}, {2, 1, 3, 4})});
    fs.push_back({FamilyId::av1324_3124, "av1324-3124", 3, 2, 2, false, 1, true,
                  LabelMode::site_count, avoid2({1, 3, 2, 4}, {3, 1, 2, 4})});
    fs.push_back({FamilyId::av2314_3214, "av2314-3214", 3, 2, 2, false, 1, true,
                  LabelMode::site_count, avoid2({2, 3, 1, 4}, {3, 2, 1, 4})});
    fs.push_back({FamilyId::av2413_4213, "av2413-4213", 3, 2, 2, false, 1, true,
                  LabelMode::site_count, avoid2({2, 4, 1, 3}, {4, 2, 1, 3})});
    fs.push_back({FamilyId::av3412_4312, "av3412-4312", 3, 2, 2, false, 1, true,
                  LabelMode::site_count, avoid2({3, 4, 1, 2}, {4, 3, 1, 2})});
    fs.push_back({FamilyId::famA, "famA", 1, 0, 1, true, 1, false, LabelMode::last_value,
                  {GP::classical(perm({2, 1, 3})), GP::barred231()}});
    fs.push_back({FamilyId::famB, "famB", 1, 0, 1, true, 2, false, LabelMode::last_value,
                  {GP::classical(perm({2, 1, 3})), GP::barredOdd231()}});
    return fs;
}

} // namespace detail

inline const std::vector<FamilySpec>& all_families() {
    static const std::vector<FamilySpec> fams = detail::make_families();
    return fams;
}

inline const FamilySpec& family(FamilyId id) {
    for (const auto& f : all_families())
        if (f.id == id) return f;
    throw DomainError("unknown family id");
}

inline const FamilySpec& family_by_name(const std::string& name) {
    for (const auto& f : all_families())
        if (f.name == name) return f;
    throw DomainError("unknown family '" + name + "'");
}

// ---------------------------------------------------------------------------
// Appended-value zones.
//
// For sigma in the family, appending a new final value v = m - 1/2 creates a
// new occurrence of a forbidden classical pattern pi only with the new value
// in the last role. The set of such v is a union of open value-intervals
// (lo, hi) whose endpoints are existing values (0 and n+1 as sentinels).
// Site m is blocked by (lo, hi) iff m in [lo+1, hi].
// ---------------------------------------------------------------------------

namespace detail {

struct ZoneInterval {
    int lo, hi; // open interval (lo, hi) in value space
};

// Prefix rank table: row(i)[v] = #{a <= i : sigma(a) <= v}. Row 0 is zeros.
class PrefixCounts {
  public:
    PrefixCounts(const Permutation& s) : n_(s.size()), c_((n_ + 1) * (n_ + 1), 0) {
        for (int i = 1; i <= n_; ++i) {
            int* cur = row(i);
            const int* prev = row(i - 1);
            for (int v = 0; v <= n_; ++v) cur[v] = prev[v] + (s(i) <= v ? 1 : 0);
        }
    }
    // count of prefix values in [lo, hi] among positions <= i
    int count(int i, int lo, int hi) const {
        if (lo > hi) return 0;
        lo = std::max(lo, 1);
        hi = std::min(hi, n_);
        if (lo > hi) return 0;
        return row(i)[hi] - row(i)[lo - 1];
    }
    int min_in(int i, int lo, int hi) const { // smallest prefix value in [lo,hi]; 0 if none
        if (count(i, lo, hi) == 0) return 0;
        int a = std::max(lo, 1), b = std::min(hi, n_);
        while (a < b) {
            int m = (a + b) / 2;
            if (count(i, lo, m) > 0) b = m; else a = m + 1;
        }
        return a;
    }
    int max_in(int i, int lo, int hi) const {
        if (count(i, lo, hi) == 0) return 0;
        int a = std::max(lo, 1), b = std::min(hi, n_);
        while (a < b) {
            int m = (a + b + 1) / 2;
            if (count(i, m, hi) > 0) a = m; else b = m - 1;
        }
        return a;
    }

  private:
    int n_;
    std::vector<int> c_;
    int* row(int i) { return c_.data() + static_cast<std::size_t>(i) * (n_ + 1); }
    const int* row(int i) const { return c_.data() + static_cast<std::size_t>(i) * (n_ + 1); }
};

// Open slot (value range) for the element of prefix-rank `rank` among a set
// of already-fixed values. Returns an open interval (L, R).
inline std::pair<int, int> rank_slot(int rank, std::vector<std::pair<int, int>> fixed, int n) {
    // fixed: (prefix-rank, value) of the other elements
    std::sort(fixed.begin(), fixed.end());
    int L = 0, R = n + 1;
    for (auto [r, v] : fixed) {
        if (r < rank) L = std::max(L, v);
        else R = std::min(R, v);
    }
    return {L, R};
}

// Zone of a size-3 pattern. O(n) for 123/132 shapes, O(n log n) generally.
inline void zone3(const Permutation& s, const Permutation& pi, std::vector<ZoneInterval>& out) {
    int n = s.size();
    if (n < 2) return;
    int r3 = pi(3);
    // positions of the adjacent ranks among prefix roles (1 = a, 2 = b)
    int p_lo = 0, p_hi = 0; // 0 = sentinel
    for (int p = 1; p <= 2; ++p) {
        if (pi(p) == r3 - 1) p_lo = p;
        if (pi(p) == r3 + 1) p_hi = p;
    }
    bool a_above_b = pi(1) > pi(2);
    bool need_extremal = (p_lo == 1 || p_hi == 1);

    // prefix min/max handle the a-queries when a is not range-constrained
    // against anything but sigma(b); a full table is only needed when the
    // a element is an interval endpoint on the constrained side.
    PrefixCounts* tbl = nullptr;
    std::unique_ptr<PrefixCounts> tbl_holder;
    if (need_extremal && a_above_b) {
        tbl_holder = std::make_unique<PrefixCounts>(s);
        tbl = tbl_holder.get();
    }
    int prefmin = s(1), prefmax = s(1);
    for (int b = 2; b <= n; ++b) {
        int vb = s(b);
        int L = a_above_b ? vb : 0;
        int R = a_above_b ? n + 1 : vb;
        bool exists = a_above_b ? (prefmax > vb) : (prefmin < vb);
        if (exists) {
            int lo, hi;
            if (p_lo == 0) lo = 0;
            else if (p_lo == 2) lo = vb;
            else lo = a_above_b ? tbl->min_in(b - 1, L + 1, R - 1) : prefmin;
            if (p_hi == 0) hi = n + 1;
            else if (p_hi == 2) hi = vb;
            else hi = a_above_b ? tbl->max_in(b - 1, L + 1, R - 1) : prefmax;
            if (lo + 1 <= hi) out.push_back({lo, hi});
        }
        prefmin = std::min(prefmin, vb);
        prefmax = std::max(prefmax, vb);
    }
}

// Zone of a size-4 pattern: enumerate the last two prefix positions, answer
// the first-position condition from the prefix rank table.
inline void zone4(const Permutation& s, const Permutation& pi, std::vector<ZoneInterval>& out) {
    int n = s.size();
    if (n < 3) return;
    PrefixCounts tbl(s);
    int r4 = pi(4);
    int p_lo = 0, p_hi = 0;
    for (int p = 1; p <= 3; ++p) {
        if (pi(p) == r4 - 1) p_lo = p;
        if (pi(p) == r4 + 1) p_hi = p;
    }
    bool bc_rel = pi(2) < pi(3);
    for (int b = 2; b + 1 <= n; ++b) {
        int vb = s(b);
        for (int c = b + 1; c <= n; ++c) {
            int vc = s(c);
            if ((vb < vc) != bc_rel) continue;
            auto [L, R] = rank_slot(pi(1), {{pi(2), vb}, {pi(3), vc}}, n);
            if (tbl.count(b - 1, L + 1, R - 1) == 0) continue;
            int lo, hi;
            if (p_lo == 0) lo = 0;
            else if (p_lo == 2) lo = vb;
            else if (p_lo == 3) lo = vc;
            else lo = tbl.min_in(b - 1, L + 1, R - 1);
            if (p_hi == 0) hi = n + 1;
            else if (p_hi == 2) hi = vb;
            else if (p_hi == 3) hi = vc;
            else hi = tbl.max_in(b - 1, L + 1, R - 1);
            if (lo + 1 <= hi) out.push_back({lo, hi});
        }
    }
}

inline void append_zone(const Permutation& s, const Permutation& pi, std::vector<ZoneInterval>& out) {
    switch (pi.size()) {
        case 1: out.push_back({0, s.size() + 1}); return;
        case 2: {
            if (s.size() < 1) return;
            int mn = *std::min_element(s.values().begin(), s.values().end());
            int mx = *std::max_element(s.values().begin(), s.values().end());
            if (pi(2) == 2) out.push_back({mn, s.size() + 1});
            else out.push_back({0, mx});
            return;
        }
        case 3: zone3(s, pi, out); return;
        case 4: zone4(s, pi, out); return;
        default:
            throw DomainError("append_zone: pattern size > 4 unsupported");
    }
}

} // namespace detail

// Exactly the sites m with append_final(sigma, m) in F, ascending. Computed
// from the new-occurrence zones of each forbidden pattern plus the descent
// conditions of the barred kinds; the predicate-filter route below is kept
// as the independent cross-check.
inline std::vector<int> active_sites(const Permutation& sigma, const FamilySpec& F) {
    int n = sigma.size();
    std::vector<char> blocked(n + 2, 0);
    std::vector<detail::ZoneInterval> zones;
    for (const auto& g : F.avoidance) {
        if (g.kind != GeneralizedPattern::Kind::classical) continue;
        zones.clear();
        detail::append_zone(sigma, g.pattern, zones);
        for (const auto& z : zones)
            for (int m = std::max(1, z.lo + 1); m <= std::min(n + 1, z.hi); ++m) blocked[m] = 1;
    }
    for (const auto& g : F.avoidance) {
        // A new descent (n, n+1) appears iff m <= sigma(n); its witness count
        // is sigma(n) - m since every value except sigma(n) sits earlier.
        if (g.kind == GeneralizedPattern::Kind::barred_2_31) {
            blocked[sigma(n)] = 1;
        } else if (g.kind == GeneralizedPattern::Kind::barred_2_odd_31) {
            for (int m = sigma(n); m >= 1; m -= 2) blocked[m] = 1;
        }
    }
    std::vector<int> sites;
    for (int m = 1; m <= n + 1; ++m)
        if (!blocked[m]) sites.push_back(m);
    return sites;
}

// Naive membership route: append each site and test the predicates.
inline std::vector<int> active_sites_filter(const Permutation& sigma, const FamilySpec& F) {
    std::vector<int> sites;
    for (int m = 1; m <= sigma.size() + 1; ++m) {
        Permutation child = append_final(sigma, m);
        bool ok = true;
        for (const auto& g : F.avoidance)
            if (!satisfies(child, g)) { ok = false; break; }
        if (ok) sites.push_back(m);
    }
    return sites;
}

inline bool member(const Permutation& sigma, const FamilySpec& F) {
    for (const auto& g : F.avoidance)
        if (!satisfies(sigma, g)) return false;
    return true;
}

} // namespace gentree

#endif
