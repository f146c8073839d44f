#include "knotsurg/dioph.hpp"

#include <doctest.h>

#include <tuple>

using namespace knotsurg;

namespace {
bool brute_has(long a, long b, long c, long bound) {
    for (long q = 1; q <= bound; ++q)
        for (long p = -bound; p <= bound; ++p)
            if (a * p * p - b * q * q == c) return true;
    return false;
}
}  // namespace

TEST_CASE("the 10_118 equation") {
    DiophResult r = solve(32, 1420, 20);
    CHECK(r.verdict == DiophVerdict::Infinite);
    REQUIRE(r.unit);
    CHECK(r.unit->first == 1279);
    CHECK(r.unit->second == 24);
    REQUIRE_FALSE(r.families.empty());
    for (const auto& f : r.families)
        for (const auto& [p, q] : family_members(r, f, 6)) CHECK(is_solution(32, 1420, 20, p, q));
    CHECK(is_solution(32, 1420, 20, 20, 3));
}

TEST_CASE("unsolvable rows carry verifiable witnesses") {
    for (auto [a, b, c] : {std::tuple{8L, 40L, 5L}, {32L, -680L, 20L}, {64L, 320L, 40L}, {-32L, -580L, -20L},
                           {0L, -840L, 0L}, {0L, -420L, 0L}, {32L, 160L, 20L}}) {
        CAPTURE(a);
        CAPTURE(b);
        DiophResult r = solve(a, b, c);
        CHECK(r.verdict == DiophVerdict::Unsolvable);
        CHECK(verify_witness(a, b, c, r.witness));
        CHECK_FALSE(brute_has(a, b, c, 60));
    }
    DiophResult r = solve(8, 40, 5);
    CHECK(r.witness.kind == DiophWitness::Kind::Modulus);
    CHECK(solve(32, -680, 20).witness.kind == DiophWitness::Kind::Definite);
    CHECK(solve(0, -840, 0).witness.kind == DiophWitness::Kind::Degenerate);
    // a forged witness does not verify
    DiophWitness bogus;
    bogus.kind = DiophWitness::Kind::Modulus;
    bogus.modulus = 3;
    CHECK_FALSE(verify_witness(1, 2, 1, bogus));
}

TEST_CASE("Pell") {
    CHECK(pell_fundamental(2) == std::pair<Integer, Integer>{3, 2});
    auto [u, v] = pell_fundamental(2840);
    CHECK(u * u - 2840 * v * v == 1);
    for (long y = 1; y < v; ++y) CHECK_FALSE(is_square(Integer(2840) * y * y + 1));
    CHECK_THROWS(pell_fundamental(4));
    CHECK_THROWS(pell_fundamental(0));
    CHECK(pell_negative(2)->first == 1);
    CHECK_FALSE(pell_negative(3).has_value());
    auto cls = generalized_pell_classes(2, 7);
    REQUIRE_FALSE(cls.empty());
    for (auto& [x, y] : cls) CHECK(x * x - 2 * y * y == 7);
}

TEST_CASE("family identity") {
    FamilyCheck ok = family_check(32, 1420, 20, {20, 1065}, {3, 160}, 2840);
    CHECK(ok.identity);
    CHECK(ok.k == 20);
    CHECK_FALSE(family_check(32, 1420, 20, {20, 1064}, {3, 160}, 2840).identity);
    CHECK_FALSE(family_check(32, 1420, 20, {20, 1065}, {3, -160}, 2840).identity);
    FamilyCheck t = family_check(1, 7, 1, {1, 0}, {0, 1}, 7);
    CHECK(t.identity);
    CHECK(t.k == 1);
}

TEST_CASE("degenerate and finite cases") {
    DiophResult all = solve(0, 0, 0);
    CHECK(all.verdict == DiophVerdict::Infinite);
    CHECK(solve(0, 0, 1).verdict == DiophVerdict::Unsolvable);
    DiophResult fin = solve(1, -1, 25);
    CHECK(fin.verdict == DiophVerdict::Finite);
    for (auto& [p, q] : fin.solutions) CHECK(is_solution(1, -1, 25, p, q));
    // p^2 + q^2 = 25 with q >= 1: (0,5), (+-3,4), (+-4,3)
    CHECK(fin.solutions.size() == 5);
    DiophResult sq = solve(1, 4, 5);  // (p - 2q)(p + 2q) = 5
    CHECK(sq.verdict == DiophVerdict::Finite);
    CHECK(sq.solutions.size() == 2);
}

TEST_CASE("small coefficient cube against brute force") {
    for (long a = -6; a <= 6; ++a)
        for (long b = -6; b <= 6; ++b)
            for (long c = -6; c <= 6; ++c) {
                DiophResult r = solve(a, b, c);
                bool found = brute_has(a, b, c, 80);
                CAPTURE(a);
                CAPTURE(b);
                CAPTURE(c);
                if (r.verdict == DiophVerdict::Unsolvable) {
                    CHECK_FALSE(found);
                    CHECK(verify_witness(a, b, c, r.witness));
                } else {
                    CHECK(found);
                }
                if (r.verdict == DiophVerdict::Finite)
                    for (auto& [p, q] : r.solutions) CHECK(is_solution(a, b, c, p, q));
            }
}
