#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "gentree/family.hpp"
#include "gentree/oracle.hpp"
#include "gentree/permutation.hpp"
#include "gentree/rng.hpp"

using namespace gentree;

namespace {

Permutation random_perm(int n, Rng& rng) {
    std::vector<int> v(n);
    std::iota(v.begin(), v.end(), 1);
    for (int i = n - 1; i > 0; --i)
        std::swap(v[i], v[rng.uniform_below(i + 1)]);
    return Permutation(std::move(v));
}

// Interval-definition recount: standardize every window and compare.
int c_occ_via_std(const Permutation& pi, const Permutation& sigma) {
    if (pi.size() > sigma.size()) return 0;
    int count = 0;
    for (int a = 1; a + pi.size() - 1 <= sigma.size(); ++a)
        if (pat_window(sigma, a, pi.size()) == pi) ++count;
    return count;
}

} // namespace

TEST_CASE("standardize") {
    CHECK(standardize(std::vector<int>{7, 3, 6}) == Permutation::parse("312"));
    CHECK(standardize(std::vector<int>{1, 2, 3, 4, 5}) == Permutation::parse("12345"));
    CHECK(standardize(std::vector<double>{0.5, -2, 9}) == Permutation::parse("213"));
    CHECK_THROWS_AS(standardize(std::vector<int>{2, 2}), DomainError);
    CHECK_THROWS_AS(standardize(std::vector<int>{}), DomainError);
}

TEST_CASE("pat_at") {
    Permutation s = Permutation::parse("87532461");
    CHECK(pat_at(s, {2, 4, 7}) == Permutation::parse("312"));
    Permutation t = Permutation::parse("1532467");
    CHECK(pat_at(t, {2, 3, 4}) == Permutation::parse("321"));
    std::vector<int> all(t.size());
    std::iota(all.begin(), all.end(), 1);
    CHECK(pat_at(t, all) == t);
    CHECK_THROWS_AS(pat_at(t, {0, 2}), DomainError);
    CHECK_THROWS_AS(pat_at(t, {2, 8}), DomainError);
    CHECK_THROWS_AS(pat_at(t, {3, 2}), DomainError);
}

TEST_CASE("pat_at full-interval round trip") {
    Rng rng(11);
    for (int n = 1; n <= 9; ++n) {
        Permutation s = random_perm(n, rng);
        std::vector<int> all(n);
        std::iota(all.begin(), all.end(), 1);
        CHECK(pat_at(s, all) == s);
    }
}

TEST_CASE("c_occ") {
    Permutation sigma = Permutation::parse("1532467");
    CHECK(c_occ(Permutation::parse("321"), sigma) == 1);
    CHECK(c_occ(Permutation::parse("1"), sigma) == sigma.size());
    CHECK(c_occ(Permutation::parse("1423"), sigma) == 0);
    CHECK(c_occ(Permutation::parse("12345678"), sigma) == 0); // longer than sigma
}

TEST_CASE("c_occ window totals") {
    Rng rng(12);
    for (int rep = 0; rep < 20; ++rep) {
        int n = 4 + static_cast<int>(rng.uniform_below(6));
        Permutation sigma = random_perm(n, rng);
        for (int k = 1; k <= std::min(n, 4); ++k) {
            int total = 0;
            std::vector<int> v(k);
            std::iota(v.begin(), v.end(), 1);
            do {
                total += c_occ(Permutation(std::vector<int>(v)), sigma);
            } while (std::next_permutation(v.begin(), v.end()));
            CHECK(total == n - k + 1);
        }
    }
}

TEST_CASE("c_occ rank recount agrees with interval definition") {
    Rng rng(13);
    for (int rep = 0; rep < 1000; ++rep) {
        int n = 1 + static_cast<int>(rng.uniform_below(24));
        int k = 1 + static_cast<int>(rng.uniform_below(4));
        Permutation sigma = random_perm(n, rng);
        Permutation pi = random_perm(k, rng);
        CHECK(c_occ(pi, sigma) == c_occ_via_std(pi, sigma));
    }
}

TEST_CASE("contains") {
    CHECK(contains(Permutation::parse("1423"), Permutation::parse("1532467")));
    Permutation s = Permutation::parse("35142");
    CHECK(contains(s, s));
    CHECK_FALSE(contains(Permutation::parse("4321"), Permutation::parse("1234")));
}

TEST_CASE("generalized patterns") {
    auto b = GeneralizedPattern::barred231();
    auto bo = GeneralizedPattern::barredOdd231();
    CHECK(satisfies(Permutation::parse("4627513"), b));
    CHECK_FALSE(satisfies(Permutation::parse("2475613"), b));
    CHECK(satisfies(Permutation::parse("123456"), b));
    CHECK(satisfies(Permutation::parse("123456"), bo));
    CHECK(satisfies(Permutation::parse("231"), bo));
    CHECK_FALSE(satisfies(Permutation::parse("132"), bo));
}

TEST_CASE("append_final") {
    CHECK(append_final(Permutation::parse("21"), 1) == Permutation::parse("321"));
    CHECK(append_final(Permutation::parse("1"), 2) == Permutation::parse("12"));
    CHECK(append_final(append_final(Permutation::parse("1"), 1), 3) == Permutation::parse("213"));
    CHECK_THROWS_AS(append_final(Permutation::parse("21"), 4), DomainError);
    CHECK_THROWS_AS(append_final(Permutation::parse("21"), 0), DomainError);
}

TEST_CASE("append_final is injective and strips back") {
    Rng rng(14);
    for (int rep = 0; rep < 50; ++rep) {
        int n = 1 + static_cast<int>(rng.uniform_below(9));
        Permutation sigma = random_perm(n, rng);
        std::vector<Permutation> children;
        std::vector<int> idx(n);
        std::iota(idx.begin(), idx.end(), 1);
        for (int m = 1; m <= n + 1; ++m) {
            Permutation child = append_final(sigma, m);
            CHECK(child(n + 1) == m);
            CHECK(pat_at(child, idx) == sigma);
            children.push_back(child);
        }
        std::sort(children.begin(), children.end());
        CHECK(std::adjacent_find(children.begin(), children.end()) == children.end());
    }
}

TEST_CASE("active sites agree with the predicate filter") {
    for (const auto& F : all_families()) {
        int nmax = F.is_group() ? 7 : 8;
        for (int n = 1; n <= nmax; ++n) {
            for (const auto& sigma : brute_enumerate(F, n).members) {
                CHECK(active_sites(sigma, F) == active_sites_filter(sigma, F));
            }
        }
    }
    // spot checks at n = 8 for one group family (full sweep runs at <= 7)
    const auto& G = family(FamilyId::av1423_4123);
    Rng rng(15);
    auto level = brute_enumerate(G, 8);
    for (int rep = 0; rep < 400; ++rep) {
        const auto& sigma = level.members[rng.uniform_below(level.count)];
        CHECK(active_sites(sigma, G) == active_sites_filter(sigma, G));
    }
}

TEST_CASE("active sites: documented special cases") {
    const auto& G = family(FamilyId::av1423_4123);
    for (int n = 1; n <= 6; ++n)
        for (const auto& sigma : brute_enumerate(G, n).members) {
            auto sites = active_sites(sigma, G);
            CHECK(std::binary_search(sites.begin(), sites.end(), 1));
            CHECK(std::binary_search(sites.begin(), sites.end(), 2));
            CHECK(std::binary_search(sites.begin(), sites.end(), n + 1));
        }
    Permutation one = Permutation::parse("1");
    for (const auto& F : all_families())
        CHECK(active_sites(one, F) == std::vector<int>{1, 2});
    // Av(123), sigma = 12: appending 3 or above the 2 creates 123
    CHECK(active_sites(Permutation::parse("12"), family(FamilyId::av123)) ==
          std::vector<int>{1, 2});
}
