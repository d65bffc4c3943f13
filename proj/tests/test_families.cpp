#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hedonica/families.hpp"

using namespace hedonica;

// n = 4. 0: 1 > 2; 1: 0; 2: {0,1} tied; 3: loner. Not mutual (2 likes 1
// one-sidedly).
static OrderingProfile p4() {
    return OrderingProfile::make(4, {{{1}, {2}}, {{0}}, {{0, 1}}, {}});
}

// n = 4, mutual, strict except for agent 2's tie.
static OrderingProfile p4m() {
    return OrderingProfile::make(4, {{{1}, {2}}, {{0}, {2}}, {{0, 1}}, {}});
}

TEST_CASE("family names round-trip") {
    for (const char* name : {"ircl", "sr", "wgame", "wbgame", "as", "hcnet", "fhg", "socialfhg",
                             "median", "midrange", "lapproval"}) {
        auto f = family_from_string(name);
        REQUIRE(f.has_value());
        CHECK(std::string(to_string(*f)) == name);
    }
    CHECK(!family_from_string("nope"));
}

TEST_CASE("canonical utilities ladder") {
    auto u = canonical_utilities(p4(), -24, 4);
    CHECK(u.values[0][1] == 5);  // best of two classes
    CHECK(u.values[0][2] == 4);
    CHECK(u.values[0][3] == -24);
    CHECK(u.values[0][0] == 0);
    CHECK(u.values[1][0] == 4);  // single class sits at b
    CHECK(u.values[2][0] == 4);
    CHECK(u.values[2][1] == 4);  // tied agents share a value
    CHECK_THROWS_AS(canonical_utilities(p4(), -1, 0), std::invalid_argument);
}

TEST_CASE("additively separable values") {
    GameInstance g(p4(), FamilyTag::AdditivelySeparable);
    CHECK(g.utilities().a == -24);
    CHECK(g.utilities().b == 4);
    CHECK(g.evaluate(0, {0, 1, 2}) == Rational(9));
    CHECK(g.evaluate(0, {0, 1, 2, 3}) == Rational(-15));
    CHECK(g.evaluate(0, {0}) == Rational(0));
    CHECK(g.compare(0, {0, 1}, {0, 2}) == Comparison::Greater);
    CHECK(g.compare(3, {3}, {2, 3}) == Comparison::Greater);
}

TEST_CASE("coalition net equals additive separability up to one enemy") {
    GameInstance net(p4(), FamilyTag::CoalitionNet);
    GameInstance as(p4(), FamilyTag::AdditivelySeparable);
    CHECK(net.evaluate(0, {0, 1, 3}) == as.evaluate(0, {0, 1, 3}));
    // Two enemies: the disjunctive enemy rule fires only once.
    CHECK(net.evaluate(1, {1, 2, 3}) == Rational(-24));
    CHECK(as.evaluate(1, {1, 2, 3}) == Rational(-48));

    auto rules = build_hcnet(p4(), 1, net.utilities());
    REQUIRE(rules.size() == 2);
    CHECK(evaluate_hcnet(rules, {1, 2, 3}) == -24);
    CHECK(evaluate_hcnet(rules, {0, 1, 2}) == 4 - 24);
    CHECK(evaluate_hcnet(rules, {0, 1}) == 4);
}

TEST_CASE("fractional hedonic values") {
    GameInstance g(p4(), FamilyTag::FractionalHedonic);
    CHECK(g.utilities().a == -36);
    CHECK(g.utilities().b == 7);
    CHECK(g.evaluate(0, {0, 1, 2}) == Rational(5));  // (8 + 7) / 3
    CHECK(g.evaluate(0, {0, 1}) == Rational(4));
    CHECK(g.evaluate(0, {0, 3}) == Rational(-18));
}

TEST_CASE("social fractional hedonic values") {
    GameInstance g(p4(), FamilyTag::SocialFractionalHedonic);
    CHECK(g.utilities().a == 0);
    CHECK(g.utilities().b == 28);
    CHECK(g.evaluate(0, {0, 1}) == Rational(29, 2));
    CHECK(g.evaluate(0, {0, 1, 3}) == Rational(29, 3));
    // Enemies dilute but never hurt below zero.
    CHECK(g.compare(0, {0, 1}, {0, 1, 3}) == Comparison::Greater);
    CHECK(g.compare(0, {0, 3}, {0}) == Comparison::Equal);
}

TEST_CASE("median values") {
    GameInstance g(p4(), FamilyTag::Median);
    CHECK(g.evaluate(0, {0, 1, 2}) == Rational(5));      // {0,6,5} -> 5
    CHECK(g.evaluate(0, {0, 1, 2, 3}) == Rational(5, 2));  // {0,0,5,6}
    CHECK(g.evaluate(0, {0, 1}) == Rational(3));         // {0,6}
    CHECK(g.evaluate(0, {0}) == Rational(0));
}

TEST_CASE("midrange values") {
    GameInstance g(p4(), FamilyTag::Midrange);
    CHECK(g.utilities().a == -12);
    CHECK(g.evaluate(0, {0, 1, 2}) == Rational(3, 2));  // (2 + 1) / 2 over others
    CHECK(g.evaluate(0, {0, 1}) == Rational(2));
    CHECK(g.evaluate(0, {0, 1, 3}) == Rational(-5));    // (2 - 12) / 2
    CHECK(g.evaluate(0, {0}) == Rational(0));
}

TEST_CASE("l-approval values") {
    GameInstance g(p4(), FamilyTag::LApproval);
    CHECK(g.utilities().a == -96);
    CHECK(g.evaluate(0, {0, 1, 2}) == Rational(9));
    CHECK(g.evaluate(0, {0, 1, 2, 3}) == Rational(-87));
    FamilyParams small;
    small.l = 3;
    CHECK_THROWS_AS(GameInstance(p4(), FamilyTag::LApproval, small), std::invalid_argument);
}

TEST_CASE("w-game ranks by worst member") {
    GameInstance g(p4(), FamilyTag::WGame);
    CHECK_THROWS_AS(g.evaluate(0, {0}), std::logic_error);  // ordinal
    CHECK(g.compare(0, {0, 1}, {0, 2}) == Comparison::Greater);
    CHECK(g.compare(0, {0, 1, 2}, {0, 2}) == Comparison::Equal);  // same worst
    CHECK(g.compare(0, {0}, {0, 3}) == Comparison::Greater);
    CHECK(g.compare(0, {0, 2}, {0}) == Comparison::Greater);
}

TEST_CASE("wb-game breaks worst ties by best member") {
    GameInstance g(p4(), FamilyTag::WBGame);
    CHECK(g.compare(0, {0, 1, 2}, {0, 2}) == Comparison::Greater);
    CHECK(g.compare(0, {0, 1}, {0, 1, 2}) == Comparison::Greater);  // worst wins first
}

TEST_CASE("ircl list for a strict agent") {
    IrclList list = build_ircl_list(p4m(), 0, true);
    REQUIRE(list.coalitions.size() == 4);
    CHECK(list.coalitions[0] == Coalition{0, 1, 2});
    CHECK(list.coalitions[1] == Coalition{0, 1});
    CHECK(list.coalitions[2] == Coalition{0, 2});
    CHECK(list.coalitions[3] == Coalition{0});
    CHECK(list.rank == std::vector<int>{0, 1, 2, 3});
}

TEST_CASE("ircl list with a tied class") {
    IrclList list = build_ircl_list(p4m(), 2, true);
    REQUIRE(list.coalitions.size() == 4);
    CHECK(list.coalitions[0] == Coalition{0, 1, 2});
    // Tied partners give equally ranked pairs.
    CHECK(list.rank[1] == list.rank[2]);
    CHECK(list.coalitions[3] == Coalition{2});
}

TEST_CASE("ircl game orders coalitions by list position") {
    GameInstance g(p4m(), FamilyTag::IRCL);
    CHECK(g.compare(0, {0, 1, 2}, {0, 1}) == Comparison::Greater);
    CHECK(g.compare(0, {0, 1}, {0, 2}) == Comparison::Greater);
    CHECK(g.compare(0, {0, 2}, {0}) == Comparison::Greater);
    CHECK(g.compare(0, {0}, {0, 1, 2, 3}) == Comparison::Greater);  // unlisted
    CHECK(g.compare(0, {0, 3}, {0, 1, 2, 3}) == Comparison::Equal);  // all unlisted tie
    CHECK(g.compare(2, {0, 2}, {1, 2}) == Comparison::Equal);
    CHECK_THROWS_AS(GameInstance(p4(), FamilyTag::IRCL), std::invalid_argument);
}

TEST_CASE("stable roommates keeps pairs only") {
    GameInstance g(p4(), FamilyTag::StableRoommates);  // non-mutual is fine here
    CHECK(g.compare(0, {0, 1}, {0, 2}) == Comparison::Greater);
    CHECK(g.compare(0, {0}, {0, 1, 2}) == Comparison::Greater);  // triangles unlisted
    CHECK(g.compare(0, {0, 2}, {0}) == Comparison::Greater);
}

TEST_CASE("compare requires membership") {
    GameInstance g(p4(), FamilyTag::AdditivelySeparable);
    CHECK_THROWS_AS(g.compare(3, {0, 1}, {0, 3}), std::invalid_argument);
}

TEST_CASE("pref_key agrees with coalition evaluation") {
    GameInstance g(p4(), FamilyTag::FractionalHedonic);
    // {0,1,3}: friend 1 present, one enemy.
    PrefValue k = g.pref_key(0, {1}, 1);
    CHECK(Rational(k.num, k.den) == g.evaluate(0, {0, 1, 3}));
    CHECK(compare(g.pref_key(0, {1, 2}, 0), g.pref_key(0, {1}, 0)) == Comparison::Greater);
}

TEST_CASE("overrides reach the utility matrix") {
    FamilyParams params;
    params.a_override = -7;
    params.b_override = 2;
    GameInstance g(p4(), FamilyTag::AdditivelySeparable, params);
    CHECK(g.utilities().a == -7);
    CHECK(g.value(0, 1) == 3);
    CHECK(g.value(0, 3) == -7);
}
