#include <doctest.h>

#include <cmath>

#include "gentree/oracle.hpp"
#include "gentree/patstats.hpp"

using namespace gentree;

TEST_CASE("brute counts: known sequences") {
    const std::uint64_t catalan[] = {1, 2, 5, 14, 42, 132, 429, 1430};
    for (int n = 1; n <= 8; ++n) {
        CHECK(brute_enumerate(family(FamilyId::av123), n).count == catalan[n - 1]);
        CHECK(brute_enumerate(family(FamilyId::av132), n).count == catalan[n - 1]);
    }
    const std::uint64_t motzkin[] = {1, 1, 2, 4, 9, 21, 51, 127};
    for (int n = 1; n <= 8; ++n)
        CHECK(brute_enumerate(family(FamilyId::famA), n).count == motzkin[n - 1]);
    CHECK(brute_enumerate(family(FamilyId::av1423_4123), 3).count == 6);
    CHECK(brute_enumerate(family(FamilyId::av1423_4123), 4).count == 22);
    CHECK(brute_enumerate(family(FamilyId::av123), 1).count == 1);
    CHECK_THROWS_AS(brute_enumerate(family(FamilyId::av123), 13), ResourceError);
}

TEST_CASE("the six group families share level counts") {
    for (int n = 1; n <= 8; ++n) {
        std::uint64_t ref = level_count(family(FamilyId::av1423_4123), n);
        for (const auto& F : all_families())
            if (F.is_group()) CHECK(level_count(F, n) == ref);
    }
    for (int n = 1; n <= 6; ++n) {
        std::uint64_t ref = brute_enumerate(family(FamilyId::av1423_4123), n).count;
        for (const auto& F : all_families())
            if (F.is_group()) CHECK(brute_enumerate(F, n).count == ref);
    }
}

TEST_CASE("famB counts match the lattice-path model") {
    for (int n = 1; n <= 10; ++n)
        CHECK(level_count(family(FamilyId::famB), n) == lattice_paths_below_halfline(n));
    for (int n = 1; n <= 8; ++n)
        CHECK(brute_enumerate(family(FamilyId::famB), n).count ==
              lattice_paths_below_halfline(n));
}

TEST_CASE("growth enumeration equals the n!-filter") {
    for (const auto& F : all_families())
        for (int n = 1; n <= 7; ++n) {
            auto a = brute_enumerate(F, n);
            auto b = brute_enumerate_filter(F, n);
            CHECK(a.count == b.count);
            CHECK(a.members == b.members);
        }
}

TEST_CASE("verify_bijection small") {
    for (const auto& F : all_families())
        for (int n = 1; n <= 6; ++n) CHECK(verify_bijection(F, n).ok);
}

TEST_CASE("verify_sampler") {
    Rng rng(606);
    CHECK_THROWS_AS(verify_sampler(family(FamilyId::av123), 5, 100, rng), DomainError);
    for (SamplerKind kind : {SamplerKind::cycle, SamplerKind::rejection}) {
        Rng stream = rng.split(kind == SamplerKind::cycle ? 1 : 2);
        ChiSquareReport rep = verify_sampler(family(FamilyId::av123), 4, 3000, stream, kind);
        CHECK(rep.classes == 14);
        CHECK(rep.pvalue > 0.01);
    }
}

TEST_CASE("exact c-occ pmf") {
    const auto& F = family(FamilyId::av123);
    Permutation one = Permutation::parse("1");
    for (int n : {3, 5}) {
        CcoccPmf pmf = exact_ccocc_pmf(F, n, one);
        REQUIRE(pmf.pmf.size() == 1);
        CHECK(pmf.pmf.count(n) == 1);
        CHECK(pmf.mean == doctest::Approx(static_cast<double>(n)));
    }
    Permutation pi = Permutation::parse("21");
    double total = 0;
    for (const auto& [k, p] : exact_ccocc_pmf(F, 8, pi).pmf) total += p;
    CHECK(total == doctest::Approx(1.0));
}

TEST_CASE("mean c-occ trends toward mu") {
    const auto& F = family(FamilyId::av123);
    Permutation pi = Permutation::parse("21");
    double mu_mid = 0;
    {
        // midpoint of the truncated mu interval
        auto iv = mu(F, pi, 30);
        mu_mid = iv.mid();
    }
    double gap4 = std::abs(exact_ccocc_pmf(F, 4, pi).mean / 4.0 - mu_mid);
    double gap10 = std::abs(exact_ccocc_pmf(F, 10, pi).mean / 10.0 - mu_mid);
    CHECK(gap10 < gap4);
    CHECK(gap10 < 0.05);
}
