#ifndef GENTREE_PAT_HPP
#define GENTREE_PAT_HPP

#include <algorithm>
#include <string>
#include <vector>

#include "gentree/codec.hpp"
#include "gentree/errors.hpp"
#include "gentree/family.hpp"
#include "gentree/labels.hpp"
#include "gentree/permutation.hpp"
#include "gentree/slist.hpp"

namespace gentree {

namespace detail {

inline void check_jump_alphabet(const FamilySpec& F, const ColoredJumpSeq& js) {
    for (std::size_t i = 0; i < js.jumps.size(); ++i) {
        const auto& j = js.jumps[i];
        int m = j.y <= 1 ? F.mult(j.y) : 0;
        if (m < 1)
            throw ConsistencyError(F.name + ": jump " + std::to_string(j.y) + " not in the alphabet",
                                   i);
        if (j.color < 1 || j.color > m)
            throw ConsistencyError(F.name + ": color out of range for jump " + std::to_string(j.y),
                                   i);
    }
}

// Build root + ramp + given jumps. The ramp climbs with (+1, top color)
// steps high enough that every label in the final h-window clears c(h).
inline ColoredLabelSeq ramp_sequence(const FamilySpec& F, const ColoredJumpSeq& js, int extra) {
    int h = static_cast<int>(js.jumps.size());
    int minpre = 0, pre = 0;
    for (const auto& j : js.jumps) {
        pre += j.y;
        minpre = std::min(minpre, pre);
    }
    int lambda = F.root_label;
    int R = F.c_of_h(h) - lambda - minpre + 1 + extra;
    R = std::max(R, 1);
    int topc = F.mult(1); // color of the top +1 child (2 in the colored group)
    ColoredLabelSeq s;
    s.labels.push_back({lambda, 1});
    for (int r = 1; r <= R; ++r) s.labels.push_back({lambda + r, topc});
    int cur = lambda + R;
    for (const auto& j : js.jumps) {
        cur += j.y;
        s.labels.push_back({cur, j.color});
    }
    return s;
}

} // namespace detail

// Jump-to-pattern oracle: prepend a high ramp, walk the tree through the
// given jumps, and read the consecutive pattern of the final h positions.
// The result is ramp-height invariant (evaluated at two heights).
inline Permutation pat_of_jumps_generic(const FamilySpec& F, const ColoredJumpSeq& js) {
    if (js.jumps.empty()) throw DomainError("pat_of_jumps: empty jump tuple");
    detail::check_jump_alphabet(F, js);
    int h = static_cast<int>(js.jumps.size());
    Permutation result;
    for (int extra : {0, 5}) {
        ColoredLabelSeq s = detail::ramp_sequence(F, js, extra);
        Permutation sigma = decode(F, s);
        Permutation pat = pat_window(sigma, sigma.size() - h + 1, h);
        if (extra == 0) result = pat;
        else if (pat != result)
            throw DomainError(F.name + ": ramp-height dependence for jumps " + js.str());
    }
    return result;
}

// Production Pat: the S-list fast path where it exists, the ramp elsewhere.
inline Permutation pat_of_jumps(const FamilySpec& F, const ColoredJumpSeq& js) {
    if (js.jumps.empty()) throw DomainError("pat_of_jumps: empty jump tuple");
    if (F.id == FamilyId::av1423_4123) {
        detail::check_jump_alphabet(F, js);
        return slist_pattern(js);
    }
    return pat_of_jumps_generic(F, js);
}

} // namespace gentree

#endif
