#include <doctest.h>

#include "gentree/pat.hpp"
#include "gentree/slist.hpp"

using namespace gentree;

namespace {

SList::Entry dot(int d) { return SList::Entry::circled(d); }
SList::Entry iv(long long lo, long long hi) { return SList::Entry::interval(lo, hi); }
SList::Entry uiv(long long hi) { return SList::Entry::interval(SList::NEG_INF, hi); }

SList make(std::initializer_list<SList::Entry> es) {
    SList s;
    s.entries = es;
    return s;
}

const ColoredJump T1{1, 2};
const ColoredJump B1{1, 1};

} // namespace

TEST_CASE("slist_init") {
    CHECK(slist_init(T1) == make({uiv(0), dot(1)}));
    CHECK(slist_init(B1) == make({dot(1), uiv(0)}));
    CHECK(slist_init({-3, 1}) == make({uiv(0), dot(1)}));
    CHECK_THROWS_AS(slist_init({2, 1}), DomainError);
    CHECK_THROWS_AS(slist_init({-1, 2}), DomainError);
}

TEST_CASE("slist_advance: the worked jump-by-jump example") {
    // jumps (-2, +1B, +1B, +1T, +1T, -7)
    SList s = slist_init({-2, 1});
    CHECK(s == make({uiv(0), dot(1)}));
    s = slist_advance(s, B1, 1);
    CHECK(s == make({dot(2), uiv(0), dot(1)}));
    s = slist_advance(s, B1, 2);
    CHECK(s == make({dot(3), dot(2), uiv(0), dot(1)}));
    s = slist_advance(s, T1, 3);
    CHECK(s == make({dot(3), dot(2), uiv(-1), dot(1), iv(0, 0), dot(4)}));
    s = slist_advance(s, T1, 4);
    CHECK(s == make({dot(3), dot(2), uiv(-2), dot(1), iv(-1, -1), dot(4), iv(0, 0), dot(5)}));
    s = slist_advance(s, {-7, 1}, 5);
    CHECK(s == make({dot(3), dot(2), uiv(0), dot(6), dot(1), dot(4), dot(5)}));
    CHECK(slist_read(s) == Permutation::parse("421563"));
}

TEST_CASE("slist_read") {
    CHECK(slist_read(make({dot(4), dot(3), uiv(-1), dot(1), dot(5), iv(0, 0), dot(2)})) ==
          Permutation::parse("35214"));
    CHECK(slist_read(make({dot(1)})) == Permutation::parse("1"));
    CHECK_THROWS_AS(slist_read(make({uiv(0)})), DomainError);
}

TEST_CASE("slist guard error") {
    // a malformed list with a gap: jump lands in no interval
    SList s = make({dot(1), iv(-1, 0), dot(2)});
    CHECK_THROWS_AS(slist_advance(s, {-5, 1}, 2), GuardError);
}

TEST_CASE("slist equals ramp oracle on small tuples") {
    const auto& F = family(FamilyId::av1423_4123);
    std::vector<ColoredJump> alphabet = {{1, 1}, {1, 2}, {0, 1}, {-1, 1}, {-2, 1}, {-3, 1}};
    std::function<void(ColoredJumpSeq&, int)> rec = [&](ColoredJumpSeq& js, int left) {
        if (!js.jumps.empty())
            CHECK(slist_pattern(js) == pat_of_jumps_generic(F, js));
        if (left == 0) return;
        for (const auto& j : alphabet) {
            js.jumps.push_back(j);
            rec(js, left - 1);
            js.jumps.pop_back();
        }
    };
    ColoredJumpSeq js;
    rec(js, 3);
}
