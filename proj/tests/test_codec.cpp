#include <doctest.h>

#include <algorithm>

#include "gentree/codec.hpp"
#include "gentree/oracle.hpp"
#include "gentree/rng.hpp"
#include "gentree/walk.hpp"

using namespace gentree;

namespace {

ColoredLabelSeq seq(std::initializer_list<ColoredLabel> ls) {
    ColoredLabelSeq s;
    s.labels = ls;
    return s;
}

} // namespace

TEST_CASE("decode worked example") {
    const auto& F = family(FamilyId::av1423_4123);
    auto s = seq({{2, 1}, {3, 2}, {3, 1}, {4, 2}, {4, 1}});
    CHECK(decode(F, s) == Permutation::parse("13254"));
    CHECK(encode(F, Permutation::parse("13254")) == s);
}

TEST_CASE("decode roots") {
    for (const auto& F : all_families()) {
        ColoredLabelSeq s;
        if (F.virtual_root) s.labels = {{F.root_label, 1}, {F.beta, 1}};
        else s.labels = {{F.root_label, 1}};
        CHECK(decode(F, s) == Permutation::parse("1"));
        CHECK(encode(F, Permutation::parse("1")) == s);
    }
}

TEST_CASE("decode rejects inconsistent sequences") {
    const auto& F = family(FamilyId::av123);
    // root must be the virtual label 1
    CHECK_THROWS_AS(decode(F, seq({{2, 1}, {2, 1}})), ConsistencyError);
    // label jump +2 is not a child
    try {
        decode(F, seq({{1, 1}, {2, 1}, {4, 1}}));
        CHECK(false);
    } catch (const ConsistencyError& e) {
        CHECK(e.index == 2);
    }
    // colored label in an uncolored family
    CHECK_THROWS_AS(decode(F, seq({{1, 1}, {2, 1}, {3, 2}})), ConsistencyError);
}

TEST_CASE("encode rejects non-members") {
    CHECK_THROWS_AS(encode(family(FamilyId::av123), Permutation::parse("123")),
                    MembershipError);
    CHECK_THROWS_AS(encode(family(FamilyId::famA), Permutation::parse("21")), MembershipError);
}

TEST_CASE("jumps_of") {
    auto s = seq({{2, 1}, {3, 2}, {3, 1}, {4, 2}, {4, 1}});
    ColoredJumpSeq js = jumps_of(s);
    CHECK(js == ColoredJumpSeq::parse("+1T,0,+1T,0"));
    auto constant = seq({{3, 1}, {3, 1}, {3, 1}});
    for (const auto& j : jumps_of(constant).jumps) CHECK(j.y == 0);
    // prefix-sum inverse
    Rng rng(7);
    ColoredLabelSeq r;
    r.labels.push_back({5, 1});
    int cur = 5;
    for (int i = 0; i < 10; ++i) {
        int y = 1 - static_cast<int>(rng.uniform_below(4));
        cur += y;
        r.labels.push_back({cur, 1});
    }
    CHECK(labels_from_jumps(r.labels[0], jumps_of(r)) == r);
}

TEST_CASE("enumerate_level counts and caps") {
    CHECK(enumerate_level(family(FamilyId::av1423_4123), 3).size() == 6);
    CHECK(enumerate_level(family(FamilyId::av123), 4).size() == 14);
    CHECK(enumerate_level(family(FamilyId::av1234_2134), 4).size() == 22);
    CHECK_THROWS_AS(enumerate_level(family(FamilyId::av123), 9, 1000), ResourceError);
}

TEST_CASE("bijection against brute force") {
    for (const auto& F : all_families()) {
        int nmax = F.is_group() ? 8 : 8;
        for (int n = 1; n <= nmax; ++n) {
            BijectionReport rep = verify_bijection(F, n);
            INFO(F.name, " n=", n, " ", rep.detail);
            CHECK(rep.ok);
        }
    }
}

TEST_CASE("fast decode equals generic decode") {
    // exhaustively on full levels
    for (FamilyId id :
         {FamilyId::av123, FamilyId::famA, FamilyId::famB, FamilyId::av1423_4123}) {
        const auto& F = family(id);
        for (int n = 1; n <= 7; ++n)
            for (const auto& s : enumerate_level(F, n)) CHECK(decode_fast(F, s) == decode(F, s));
    }
    // and on conditioned walks at larger sizes
    Rng rng(21);
    for (FamilyId id :
         {FamilyId::av123, FamilyId::famA, FamilyId::famB, FamilyId::av1423_4123}) {
        const auto& F = family(id);
        const auto& W = walk_params(id);
        for (int rep = 0; rep < 15; ++rep) {
            int size = 40 + static_cast<int>(rng.uniform_below(40));
            int N = size + (F.virtual_root ? 1 : 0);
            if (!conditioned_length_feasible(W, N)) ++size, ++N;
            Rng stream = rng.split(rep * 10 + static_cast<int>(id));
            ColoredWalk w = sample_conditioned_cycle(W, N, stream);
            ColoredLabelSeq s = walk_to_labels(w);
            CHECK(decode_fast(F, s) == decode(F, s));
        }
    }
}
