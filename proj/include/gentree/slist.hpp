#ifndef GENTREE_SLIST_HPP
#define GENTREE_SLIST_HPP

#include <climits>
#include <sstream>
#include <string>
#include <vector>

#include "gentree/errors.hpp"
#include "gentree/labels.hpp"
#include "gentree/permutation.hpp"

namespace gentree {

// Bookkeeping list for the Av(1423,4123) jump-to-pattern reconstruction.
// Entries alternate between position intervals over jump values (one of them
// unbounded below) and circled column indices of the dots appended so far,
// ordered bottom-to-top. Empty intervals are dropped.
struct SList {
    static constexpr long long NEG_INF = LLONG_MIN / 4;

    struct Entry {
        bool is_dot;
        long long lo, hi; // interval [lo, hi], lo may be NEG_INF
        int dot;          // circled index when is_dot

        static Entry interval(long long lo, long long hi) { return {false, lo, hi, 0}; }
        static Entry circled(int d) { return {true, 0, 0, d}; }
    };

    std::vector<Entry> entries;

    int dot_count() const {
        int c = 0;
        for (const auto& e : entries) c += e.is_dot ? 1 : 0;
        return c;
    }

    std::string str() const {
        std::ostringstream os;
        os << '[';
        for (std::size_t i = 0; i < entries.size(); ++i) {
            if (i) os << ',';
            if (entries[i].is_dot) os << '(' << entries[i].dot << ')';
            else if (entries[i].lo == NEG_INF) os << "(-inf," << entries[i].hi << ']';
            else os << '[' << entries[i].lo << ',' << entries[i].hi << ']';
        }
        os << ']';
        return os.str();
    }

    bool operator==(const SList& o) const {
        if (entries.size() != o.entries.size()) return false;
        for (std::size_t i = 0; i < entries.size(); ++i) {
            const Entry &a = entries[i], &b = o.entries[i];
            if (a.is_dot != b.is_dot) return false;
            if (a.is_dot ? (a.dot != b.dot) : (a.lo != b.lo || a.hi != b.hi)) return false;
        }
        return true;
    }
};

namespace detail {

inline void slist_check_jump(const ColoredJump& j) {
    if (j.y > 1) throw DomainError("slist: jump value above +1");
    if (j.y == 1) {
        if (j.color != 1 && j.color != 2) throw DomainError("slist: +1 jump needs color B or T");
    } else if (j.color != 1) {
        throw DomainError("slist: non-positive jump cannot be colored");
    }
}

// Merge adjacent intervals and drop empty ones; entries otherwise preserved.
inline void slist_normalize(SList& s) {
    std::vector<SList::Entry> out;
    for (const auto& e : s.entries) {
        if (!e.is_dot && e.lo > e.hi) continue;
        if (!e.is_dot && !out.empty() && !out.back().is_dot && out.back().hi + 1 == e.lo) {
            out.back().hi = e.hi;
            continue;
        }
        out.push_back(e);
    }
    s.entries = std::move(out);
}

} // namespace detail

// S^1_1 of the first jump into the window.
inline SList slist_init(const ColoredJump& j) {
    detail::slist_check_jump(j);
    SList s;
    if (j.y == 1 && j.color == 1) { // bottom
        s.entries.push_back(SList::Entry::circled(1));
        s.entries.push_back(SList::Entry::interval(SList::NEG_INF, 0));
    } else { // top, or any jump <= 0
        s.entries.push_back(SList::Entry::interval(SList::NEG_INF, 0));
        s.entries.push_back(SList::Entry::circled(1));
    }
    return s;
}

// S^{j+1}_{j+1} from S^j_j and the next jump. j is the current dot count.
inline SList slist_advance(const SList& s, const ColoredJump& jump, int j) {
    detail::slist_check_jump(jump);
    if (j != s.dot_count()) throw DomainError("slist_advance: dot count mismatch");
    SList out;
    if (jump.y == 1 && jump.color == 2) {
        // top: every recorded site moves one jump further down; a fresh site
        // appears just below the new top dot.
        out = s;
        for (auto& e : out.entries)
            if (!e.is_dot) {
                if (e.lo != SList::NEG_INF) --e.lo;
                --e.hi;
            }
        out.entries.push_back(SList::Entry::interval(0, 0));
        out.entries.push_back(SList::Entry::circled(j + 1));
    } else if (jump.y == 1) {
        // bottom: sites unchanged; the new dot sits below everything (the
        // fresh site above it corresponds to label 3 and is never recorded).
        out.entries.push_back(SList::Entry::circled(j + 1));
        for (const auto& e : s.entries) out.entries.push_back(e);
    } else {
        // interior: the dot lands on the site hit by the jump value; sites
        // above it die, sites below shift by -y, a fresh site appears just
        // below the new dot.
        long long y = jump.y;
        std::size_t t = s.entries.size();
        for (std::size_t i = 0; i < s.entries.size(); ++i) {
            const auto& e = s.entries[i];
            if (!e.is_dot && e.lo <= y && y <= e.hi) { t = i; break; }
        }
        if (t == s.entries.size())
            throw GuardError("slist_advance: jump " + std::to_string(jump.y) +
                             " falls in no recorded interval (label guard broken)");
        for (std::size_t i = 0; i < t; ++i) {
            SList::Entry e = s.entries[i];
            if (!e.is_dot) {
                if (e.lo != SList::NEG_INF) e.lo -= y;
                e.hi -= y;
            }
            out.entries.push_back(e);
        }
        const auto& c = s.entries[t];
        if (c.lo <= y - 1)
            out.entries.push_back(SList::Entry::interval(
                c.lo == SList::NEG_INF ? SList::NEG_INF : c.lo - y, -1));
        out.entries.push_back(SList::Entry::interval(0, 0));
        out.entries.push_back(SList::Entry::circled(j + 1));
        for (std::size_t i = t + 1; i < s.entries.size(); ++i)
            if (s.entries[i].is_dot) out.entries.push_back(s.entries[i]);
    }
    detail::slist_normalize(out);
    return out;
}

// The final consecutive pattern: inverse of the circled-index word.
inline Permutation slist_read(const SList& s) {
    std::vector<int> word;
    for (const auto& e : s.entries)
        if (e.is_dot) word.push_back(e.dot);
    if (word.empty()) throw DomainError("slist_read: no circled indices");
    Permutation w(std::move(word)); // validates it is a permutation of [1,h]
    return w.inverse();
}

// Fold a full jump tuple through the S-list machinery.
inline Permutation slist_pattern(const ColoredJumpSeq& js) {
    if (js.jumps.empty()) throw DomainError("slist_pattern: empty jump tuple");
    SList s = slist_init(js.jumps[0]);
    for (std::size_t i = 1; i < js.jumps.size(); ++i)
        s = slist_advance(s, js.jumps[i], static_cast<int>(i));
    return slist_read(s);
}

} // namespace gentree

#endif
