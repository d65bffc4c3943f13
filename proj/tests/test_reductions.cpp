#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <set>
#include <sstream>

#include "hedonica/graph.hpp"
#include "hedonica/reductions.hpp"
#include "hedonica/stability.hpp"

using namespace hedonica;

static const char* kPhi0 =
    "p cnf 3 4\n1 2 3 0\n1 -2 -3 0\n-1 2 -3 0\n-1 -2 3 0\n";

static Formula phi0() {
    Formula f = parse_cnf(kPhi0);
    validate_b2sat(f);
    return f;
}

static std::string slurp(const std::string& name) {
    std::ifstream in(std::string(HEDONICA_DATA_DIR) + "/" + name);
    REQUIRE(in.good());
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

static Formula six() {
    Formula f = parse_cnf(slurp("b2_6var.cnf"));
    validate_b2sat(f);
    return f;
}

static bool together(const Gadget& g, const Partition& pi, const std::string& p,
                     const std::string& q) {
    auto blocks = pi.block_of(g.profile.n);
    return blocks[g.at(p)] == blocks[g.at(q)];
}

static const Coalition& block_of(const Gadget& g, const Partition& pi, const std::string& label) {
    return pi.block_containing(g.at(label));
}

TEST_CASE("cnf parsing keeps clause order") {
    Formula f = parse_cnf(kPhi0);
    CHECK(f.num_vars == 3);
    REQUIRE(f.clauses.size() == 4);
    CHECK(f.clauses[1][0] == Literal{0, false});
    CHECK(f.clauses[1][1] == Literal{1, true});
    CHECK(f.clauses[3][2] == Literal{2, false});

    Formula shipped = parse_cnf(slurp("phi0.cnf"));  // with comment line
    CHECK(shipped.clauses == f.clauses);

    CHECK_THROWS_AS(parse_cnf("p cnf 2 1\n1 2 0\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_cnf("p cnf 3 1\n1 2 5 0\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_cnf("p dnf 3 1\n1 2 3 0\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_cnf("p cnf 3 1\n1 2 3\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_cnf("p cnf 3 2\n1 2 3 0\n"), std::invalid_argument);
}

TEST_CASE("b2 validation indexes the occurrences") {
    Formula f = phi0();
    CHECK(f.b2);
    CHECK(f.pos[0][0].clause == 0);
    CHECK(f.pos[0][1].clause == 1);
    CHECK(f.neg[0][0].clause == 2);
    CHECK(f.neg[2][1].slot == 2);

    Formula thrice = parse_cnf("p cnf 3 4\n1 2 3 0\n1 2 -3 0\n1 -2 -3 0\n-1 -2 3 0\n");
    CHECK_THROWS_WITH_AS(validate_b2sat(thrice),
                         doctest::Contains("occurs positively"), std::invalid_argument);
    Formula rep = parse_cnf("p cnf 3 4\n1 1 3 0\n1 -2 -3 0\n-1 2 -3 0\n-1 -2 3 0\n");
    CHECK_THROWS_WITH_AS(validate_b2sat(rep), doctest::Contains("repeats"), std::invalid_argument);
    Formula lop = parse_cnf("p cnf 4 4\n1 2 3 0\n1 -2 -3 0\n-1 2 -3 0\n-1 -2 4 0\n");
    CHECK_THROWS_AS(validate_b2sat(lop), std::invalid_argument);
}

TEST_CASE("sat oracle finds all-true first on the fixture") {
    Formula f = phi0();
    auto a = sat_oracle(f);
    REQUIRE(a.has_value());
    CHECK(*a == Assignment{true, true, true});

    auto all = sat_enumerate(f, 10);
    REQUIRE(all.size() == 4);
    CHECK(all[1] == Assignment{true, false, false});
    CHECK(all[2] == Assignment{false, true, false});
    CHECK(all[3] == Assignment{false, false, true});

    Formula taut = parse_cnf("p cnf 1 1\n1 1 1 0\n");  // non-B2, oracle still fine
    CHECK(sat_oracle(taut) == Assignment{true});
    Formula contra = parse_cnf("p cnf 1 2\n1 1 1 0\n-1 -1 -1 0\n");
    CHECK(!sat_oracle(contra).has_value());

    Formula big;
    big.num_vars = 21;
    CHECK_THROWS_AS(sat_oracle(big), std::invalid_argument);
}

TEST_CASE("gadget sizes") {
    Formula f3 = phi0(), f6 = six();
    CHECK(build_gadget(GadgetKind::T1, f3).profile.n == 66);
    CHECK(build_gadget(GadgetKind::T2B, f3).profile.n == 31);
    CHECK(build_gadget(GadgetKind::T2NB, f3).profile.n == 58);
    CHECK(build_gadget(GadgetKind::T3, f3).profile.n == 60);
    CHECK(build_gadget(GadgetKind::T1, f6).profile.n == 132);
    CHECK(build_gadget(GadgetKind::T2B, f6).profile.n == 62);
    CHECK(build_gadget(GadgetKind::T2NB, f6).profile.n == 116);
    CHECK(build_gadget(GadgetKind::T3, f6).profile.n == 120);
}

TEST_CASE("gadget structure") {
    for (Formula f : {phi0(), six()}) {
        Gadget t1 = build_gadget(GadgetKind::T1, f);
        CHECK(t1.profile.is_mutual());
        GraphStats s1 = graph_stats(friendship_graph(t1.profile));
        CHECK(s1.max_degree == 3);
        CHECK(s1.girth == 6);

        Gadget t2 = build_gadget(GadgetKind::T2B, f);
        CHECK(t2.profile.is_strict());
        GraphStats s2 = graph_stats(with_arcs_as_edges(friendship_graph(t2.profile)));
        CHECK(s2.bipartite);
        CHECK(s2.max_degree == 3);
        REQUIRE(s2.girth.has_value());
        CHECK(*s2.girth >= 8);

        Gadget nb = build_gadget(GadgetKind::T2NB, f);
        CHECK(nb.profile.is_strict());
        CHECK(nb.profile.is_mutual());
        GraphStats snb = graph_stats(friendship_graph(nb.profile));
        REQUIRE(snb.girth.has_value());
        CHECK(*snb.girth >= 8);

        Gadget t3 = build_gadget(GadgetKind::T3, f);
        CHECK(t3.profile.is_strict());
        CHECK(t3.profile.is_mutual());
        GraphStats s3 = graph_stats(friendship_graph(t3.profile));
        CHECK(s3.max_degree == 4);
        CHECK(!has_chordless_4cycle(friendship_graph(t3.profile)));
    }
}

TEST_CASE("gadget labels are a bijection") {
    Gadget g = build_gadget(GadgetKind::T1, phi0());
    CHECK(static_cast<int>(g.by_label.size()) == g.profile.n);
    CHECK(g.at("x1_a''") >= 0);
    CHECK(g.labels[g.at("c3_7")] == "c3_7");
    CHECK_THROWS_AS(g.at("nobody"), std::out_of_range);
}

TEST_CASE("clause remainder follows the run rule") {
    Gadget g = build_gadget(GadgetKind::T1, six());
    // x1..x5 true, x6 false: clause 1 = (x1 x2 x6) has its first two
    // positions matched, so c1_5 stays single between the pairs.
    Assignment a{true, true, true, false, true, false};
    Partition pi = construct_partition(g, a);
    CHECK(together(g, pi, "c1_1", "x1_p1"));
    CHECK(together(g, pi, "c1_4", "x2_p1"));
    CHECK(together(g, pi, "c1_2", "c1_3"));
    CHECK(block_of(g, pi, "c1_5").size() == 1);
    CHECK(together(g, pi, "c1_6", "c1_7"));
    CHECK(together(g, pi, "c1_8", "c1_9"));
    // Clause 5 = (x4 x5 x3) is matched at positions 4 and 7; the odd run
    // wraps around, leaving c5_8 single.
    CHECK(block_of(g, pi, "c5_8").size() == 1);
    CHECK(together(g, pi, "c5_9", "c5_1"));
    CHECK(together(g, pi, "c5_2", "c5_3"));
    CHECK(together(g, pi, "c5_5", "c5_6"));
}

TEST_CASE("theorem-one partition on the fixture") {
    Gadget g = build_gadget(GadgetKind::T1, phi0());
    Assignment all_true{true, true, true};
    Partition pi = construct_partition(g, all_true);
    CHECK(!validate_partition(pi, g.profile.n));

    // Clause 1 has all three literals true; clause 2 only its first.
    CHECK(together(g, pi, "c1_1", "x1_p1"));
    CHECK(together(g, pi, "c1_4", "x2_p1"));
    CHECK(together(g, pi, "c1_7", "x3_p1"));
    CHECK(together(g, pi, "c1_5", "c1_6"));
    CHECK(together(g, pi, "c2_1", "x1_p2"));
    CHECK(together(g, pi, "c2_4", "c2_5"));
    // False occurrences pair with the auxiliaries.
    CHECK(together(g, pi, "x1_n1", "x1_a"));
    CHECK(together(g, pi, "x1_n2", "x1_b"));
    CHECK(together(g, pi, "x1_a'", "x1_a''"));

    CHECK_THROWS_AS(construct_partition(g, Assignment{true, true, false}),
                    std::invalid_argument);
}

TEST_CASE("theorem-two partition on the fixture") {
    Gadget g = build_gadget(GadgetKind::T2B, phi0());
    Partition pi = construct_partition(g, {true, true, true});
    CHECK(!validate_partition(pi, g.profile.n));
    for (const auto& b : pi.blocks) CHECK(b.size() <= 2);

    CHECK(block_of(g, pi, "x1_stalker").size() == 1);
    CHECK(together(g, pi, "c1", "x1_p1"));   // true(c1) = x1
    CHECK(together(g, pi, "c2", "x1_p2"));
    CHECK(together(g, pi, "c3", "x2_p2"));   // first true literal of clause 3 is x2
    CHECK(together(g, pi, "c4", "x3_p2"));
    CHECK(together(g, pi, "x1_main", "x1_n1"));
    CHECK(together(g, pi, "x1_neg", "x1_n2"));
    // Both positive occurrences of x1 are matched.
    CHECK(block_of(g, pi, "x1_pos").size() == 1);
    CHECK(block_of(g, pi, "x1_garbage").size() == 1);
    // For x2 only the second positive occurrence is matched.
    CHECK(together(g, pi, "x2_pos", "x2_p1"));
    CHECK(block_of(g, pi, "x2_garbage").size() == 1);

    Gadget nb = build_gadget(GadgetKind::T2NB, phi0());
    Partition pnb = construct_partition(nb, {true, true, true});
    CHECK(!validate_partition(pnb, nb.profile.n));
    CHECK(together(nb, pnb, "x1_stalker", "x1_r1"));
    CHECK(together(nb, pnb, "x1_r2", "x1_r3"));
    CHECK(together(nb, pnb, "x1_r8", "x1_r9"));
}

TEST_CASE("constructed partitions avoid enemies and keep lonely agents apart") {
    for (Formula f : {phi0(), six()}) {
        for (GadgetKind k : {GadgetKind::T1, GadgetKind::T2B, GadgetKind::T2NB, GadgetKind::T3}) {
            Gadget g = build_gadget(k, f);
            FriendshipGraph fg = with_arcs_as_edges(friendship_graph(g.profile));
            for (const Assignment& a : sat_enumerate(f, 3)) {
                Partition pi = construct_partition(g, a);
                CHECK(!validate_partition(pi, g.profile.n));
                std::vector<Agent> lonely;
                for (const auto& b : pi.blocks) {
                    CHECK(b.size() <= (k == GadgetKind::T1 || k == GadgetKind::T2B ||
                                               k == GadgetKind::T2NB
                                           ? 2u
                                           : 3u));
                    if (b.size() == 1) lonely.push_back(b[0]);
                    for (size_t x = 0; x < b.size(); ++x)
                        for (size_t y = x + 1; y < b.size(); ++y)
                            CHECK(!(g.profile.is_enemy(b[x], b[y]) &&
                                    g.profile.is_enemy(b[y], b[x])));
                }
                if (k == GadgetKind::T1 || k == GadgetKind::T3) {
                    for (size_t x = 0; x < lonely.size(); ++x)
                        for (size_t y = x + 1; y < lonely.size(); ++y) {
                            auto d = distance(fg, lonely[x], lonely[y]);
                            CHECK((!d || *d >= 5));
                        }
                }
            }
        }
    }
}

TEST_CASE("round trip through construct and extract") {
    for (Formula f : {phi0(), six()}) {
        for (GadgetKind k : {GadgetKind::T1, GadgetKind::T2B, GadgetKind::T2NB, GadgetKind::T3}) {
            Gadget g = build_gadget(k, f);
            auto sols = sat_enumerate(f, 3);
            REQUIRE(sols.size() == 3);
            for (const Assignment& a : sols) {
                Assignment back = extract_assignment(g, construct_partition(g, a));
                CHECK(back == a);
                CHECK(satisfies(f, back));
            }
        }
    }
}

TEST_CASE("extraction reports bad partitions") {
    Gadget g = build_gadget(GadgetKind::T1, phi0());
    Partition pi;
    std::vector<char> used(g.profile.n, 0);
    auto pair_up = [&](const std::string& p, const std::string& q) {
        pi.blocks.push_back(sorted_coalition({g.at(p), g.at(q)}));
        used[g.at(p)] = used[g.at(q)] = 1;
    };
    pair_up("c1_1", "x1_p1");  // x1 true...
    pair_up("c3_1", "x1_n1");  // ...and false at once
    for (Agent i = 0; i < g.profile.n; ++i)
        if (!used[i]) pi.blocks.push_back({i});
    CHECK_THROWS_WITH_AS(extract_assignment(g, pi), doctest::Contains("contradictory"),
                         std::runtime_error);

    Gadget t2 = build_gadget(GadgetKind::T2B, phi0());
    Partition singles;
    for (Agent i = 0; i < t2.profile.n; ++i) singles.blocks.push_back({i});
    CHECK_THROWS_WITH_AS(extract_assignment(t2, singles), doctest::Contains("undefined"),
                         std::runtime_error);
}

TEST_CASE("theorem-two partitions are Nash stable for a strictly toxic family") {
    for (Formula f : {phi0(), six()}) {
        Gadget g = build_gadget(GadgetKind::T2B, f);
        Partition pi = construct_partition(g, *sat_oracle(f));
        GameInstance game(g.profile, FamilyTag::AdditivelySeparable);
        CHECK(!find_single_deviation(game, pi, StabilityConcept::NS).has_value());

        Gadget nb = build_gadget(GadgetKind::T2NB, f);
        Partition pnb = construct_partition(nb, *sat_oracle(f));
        GameInstance nbgame(nb.profile, FamilyTag::WGame);
        CHECK(!find_single_deviation(nbgame, pnb, StabilityConcept::NS).has_value());
        CHECK(!find_single_deviation(nbgame, pnb, StabilityConcept::IS).has_value());
    }
}

TEST_CASE("cycle gadgets") {
    Gadget pent = cycle_gadget(5);
    CHECK(pent.profile.n == 5);
    GraphStats s = graph_stats(friendship_graph(pent.profile));
    CHECK(s.girth == 5);
    CHECK(s.max_degree == 2);
    CHECK(pent.profile.compare_agents(0, 1, 4) == Comparison::Greater);

    GameInstance game(pent.profile, FamilyTag::AdditivelySeparable);
    CHECK(!exists_stable(game, StabilityConcept::CR).has_value());

    CHECK(cycle_gadget(9).profile.n == 9);
    CHECK_THROWS_AS(cycle_gadget(7), std::invalid_argument);
    CHECK_THROWS_AS(construct_partition(cycle_gadget(5), {}), std::invalid_argument);
}

TEST_CASE("gadget kind names round-trip") {
    for (GadgetKind k : {GadgetKind::T1, GadgetKind::T2B, GadgetKind::T2NB, GadgetKind::T3,
                         GadgetKind::Cycle}) {
        auto back = gadget_from_string(to_string(k));
        REQUIRE(back.has_value());
        CHECK(*back == k);
    }
    CHECK(!gadget_from_string("t9"));
}
