#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "hedonica/graph.hpp"
#include "hedonica/rgs.hpp"
#include "hedonica/types.hpp"

using namespace hedonica;

TEST_CASE("bell numbers") {
    const std::uint64_t expected[] = {1, 1, 2, 5, 15, 52, 203, 877, 4140, 21147, 115975};
    for (int n = 0; n <= 10; ++n) CHECK(bell_number(n) == expected[n]);
    CHECK(bell_number(12) == 4213597u);
}

TEST_CASE("partition enumeration order and count") {
    PartitionEnumerator en(4);
    // First partition groups everyone, last one isolates everyone.
    CHECK(en.current().blocks.size() == 1);
    std::uint64_t count = 1;
    Partition last;
    while (en.next()) {
        ++count;
        last = en.current();
    }
    CHECK(count == bell_number(4));
    CHECK(last.blocks.size() == 4);

    for (int n = 1; n <= 7; ++n) {
        std::set<std::vector<int>> seen;
        for_each_partition(n, [&](const std::vector<int>& lab) {
            seen.insert(lab);
            return true;
        });
        CHECK(seen.size() == bell_number(n));
    }
}

TEST_CASE("partition enumeration splits cleanly across workers") {
    const int n = 6;
    std::set<std::vector<int>> all;
    for (int w = 0; w < 3; ++w)
        for_each_partition(
            n,
            [&](const std::vector<int>& lab) {
                CHECK(all.insert(lab).second);
                return true;
            },
            w, 3);
    CHECK(all.size() == bell_number(n));
}

TEST_CASE("partition_from_labels") {
    Partition p = partition_from_labels({0, 1, 0, 2, 1});
    REQUIRE(p.blocks.size() == 3);
    CHECK(p.blocks[0] == Coalition{0, 2});
    CHECK(p.blocks[1] == Coalition{1, 4});
    CHECK(p.blocks[2] == Coalition{3});
}

TEST_CASE("validate_partition") {
    Partition good{{{0, 1}, {2}}};
    CHECK(!validate_partition(good, 3));
    CHECK(validate_partition(Partition{{{0, 1}, {}}}, 2).value() == "empty block");
    CHECK(validate_partition(Partition{{{0}, {0, 1}}}, 2).value() == "agent 0 duplicated");
    CHECK(validate_partition(Partition{{{0}}}, 2).value() == "agent 1 missing");
    CHECK(validate_partition(Partition{{{0, 5}}}, 2).value() == "agent 5 out of range");
}

TEST_CASE("coalition helpers") {
    Coalition c = make_coalition({3, 1, 3, 2});
    CHECK(c == Coalition{1, 2, 3});
    CHECK(contains(c, 2));
    CHECK(!contains(c, 0));
}

static OrderingProfile triangle_profile() {
    // 0: 1 > 2;  1: {0, 2} tied;  2: 0 (one-sided towards 0)
    return OrderingProfile::make(3, {{{1}, {2}}, {{0, 2}}, {{0}}});
}

TEST_CASE("ordering profile levels") {
    OrderingProfile p = triangle_profile();
    CHECK(p.level(0, 1) == 2);
    CHECK(p.level(0, 2) == 1);
    CHECK(p.level(0, 0) == 0);
    CHECK(p.level(2, 1) == -1);
    CHECK(p.level(1, 0) == p.level(1, 2));
    CHECK(p.compare_agents(0, 1, 2) == Comparison::Greater);
    CHECK(p.compare_agents(1, 0, 2) == Comparison::Equal);
    CHECK(p.compare_agents(0, 2, 0) == Comparison::Greater);  // friend beats self
    CHECK(!p.is_strict());
    CHECK(!p.is_mutual());
    CHECK(OrderingProfile::make(2, {{{1}}, {{0}}}).is_mutual());
}

TEST_CASE("ordering profile rejects malformed input") {
    CHECK_THROWS_AS(OrderingProfile::make(2, {{{0}}, {}}), std::invalid_argument);
    CHECK_THROWS_AS(OrderingProfile::make(2, {{{1}, {1}}, {}}), std::invalid_argument);
    CHECK_THROWS_AS(OrderingProfile::make(2, {{{5}}, {}}), std::invalid_argument);
    CHECK_THROWS_AS(OrderingProfile::make(2, {{std::vector<Agent>{}}, {}}),
                    std::invalid_argument);
}

TEST_CASE("friendship graph keeps reciprocal edges only") {
    FriendshipGraph g = friendship_graph(triangle_profile());
    CHECK(g.adjacent(0, 1));
    CHECK(g.adjacent(0, 2));
    CHECK(!g.adjacent(1, 2));
    REQUIRE(g.one_sided.size() == 1);
    CHECK(g.one_sided[0] == std::pair<Agent, Agent>{1, 2});

    FriendshipGraph full = with_arcs_as_edges(g);
    CHECK(full.adjacent(1, 2));
    CHECK(full.one_sided.empty());
}

TEST_CASE("graph stats on small graphs") {
    // 4-cycle, mutual.
    auto c4 = OrderingProfile::make(4, {{{1}, {3}}, {{0}, {2}}, {{1}, {3}}, {{2}, {0}}});
    GraphStats s = graph_stats(friendship_graph(c4));
    CHECK(s.max_degree == 2);
    CHECK(s.girth.value() == 4);
    CHECK(s.bipartite);
    CHECK(s.mutual);

    // Triangle.
    auto c3 = OrderingProfile::make(3, {{{1}, {2}}, {{0}, {2}}, {{0}, {1}}});
    GraphStats t = graph_stats(friendship_graph(c3));
    CHECK(t.girth.value() == 3);
    CHECK(!t.bipartite);

    // Path: acyclic.
    auto path = OrderingProfile::make(3, {{{1}}, {{0}, {2}}, {{1}}});
    CHECK(!graph_stats(friendship_graph(path)).girth.has_value());
}

TEST_CASE("distance and chordless 4-cycles") {
    auto c4 = OrderingProfile::make(4, {{{1}, {3}}, {{0}, {2}}, {{1}, {3}}, {{2}, {0}}});
    FriendshipGraph g = friendship_graph(c4);
    CHECK(distance(g, 0, 2).value() == 2);
    CHECK(has_chordless_4cycle(g));

    auto c3 = OrderingProfile::make(3, {{{1}, {2}}, {{0}, {2}}, {{0}, {1}}});
    CHECK(!has_chordless_4cycle(friendship_graph(c3)));

    auto two = OrderingProfile::make(4, {{{1}}, {{0}}, {{3}}, {{2}}});
    CHECK(!distance(friendship_graph(two), 0, 3).has_value());
}
