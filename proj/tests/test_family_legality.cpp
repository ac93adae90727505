#include <catch2/catch_amalgamated.hpp>

#include "satgame/legality.hpp"
#include "tests/oracles.hpp"

using namespace satgame;

TEST_CASE("family encoding and predicate") {
    auto odd3 = ForbiddenFamily::parse("odd<=7");
    REQUIRE(odd3.has_value());
    CHECK(odd3->kind == FamilyKind::OddUpTo);
    CHECK(odd3->param == 3);
    CHECK(odd3->to_string() == "odd<=7");

    CHECK(ForbiddenFamily::parse("single=9")->to_string() == "single=9");
    CHECK(ForbiddenFamily::parse("allodd")->to_string() == "allodd");
    CHECK(ForbiddenFamily::parse("allodd-except-3")->to_string() == "allodd-except-3");
    CHECK_FALSE(ForbiddenFamily::parse("odd<=6").has_value());
    CHECK_FALSE(ForbiddenFamily::parse("single=4").has_value());
    CHECK_FALSE(ForbiddenFamily::parse("bogus").has_value());

    for (int len = 0; len < 30; ++len) {
        bool odd = len % 2 == 1 && len >= 3;
        CHECK(ForbiddenFamily::odd_up_to(3).is_forbidden(len) == (odd && len <= 7));
        CHECK(ForbiddenFamily::single(9).is_forbidden(len) == (len == 9));
        CHECK(ForbiddenFamily::all_odd().is_forbidden(len) == odd);
        CHECK(ForbiddenFamily::all_odd_except_3().is_forbidden(len) == (odd && len >= 5));
    }
}

TEST_CASE("creates_forbidden small cases") {
    SECTION("path x-a-y closes a triangle") {
        Graph g(3);
        g.add_edge(0, 1);
        g.add_edge(1, 2);
        CHECK(creates_forbidden(g, ForbiddenFamily::odd_up_to(1), 0, 2));
    }
    SECTION("length-4 path closes C5 but not C7") {
        Graph g(5);
        for (int i = 0; i < 4; ++i) g.add_edge(i, i + 1);
        CHECK(creates_forbidden(g, ForbiddenFamily::odd_up_to(2), 0, 4));
        CHECK_FALSE(creates_forbidden(g, ForbiddenFamily::single(7), 0, 4));
    }
    SECTION("bipartite cross pairs are legal for AllOdd, same-side pairs are not") {
        // K33 minus one cross edge: re-adding it closes only even cycles.
        Graph g(6);
        for (int a = 0; a < 3; ++a) {
            for (int b = 3; b < 6; ++b) {
                if (!(a == 0 && b == 3)) g.add_edge(a, b);
            }
        }
        CHECK_FALSE(creates_forbidden(g, ForbiddenFamily::all_odd(), 0, 3));
        // A same-side pair closes a triangle through any common neighbor.
        CHECK(creates_forbidden(g, ForbiddenFamily::all_odd(), 0, 1));
        CHECK(creates_forbidden(g, ForbiddenFamily::all_odd_except_3(), 0, 1));
    }
    SECTION("two triangles joined by a path, mixed path lengths") {
        // Triangle {0,1,2}, triangle {5,6,7}, path 2-3-4-5. x=0, y=7.
        Graph g(8);
        g.add_edge(0, 1);
        g.add_edge(1, 2);
        g.add_edge(0, 2);
        g.add_edge(5, 6);
        g.add_edge(6, 7);
        g.add_edge(5, 7);
        g.add_edge(2, 3);
        g.add_edge(3, 4);
        g.add_edge(4, 5);
        auto lens = testing::all_simple_path_lengths(g, 0, 7);
        CHECK(lens == std::set<int>{5, 6, 7});
        bool expect = testing::brute_creates_forbidden(g, ForbiddenFamily::all_odd_except_3(), 0, 7);
        CHECK(expect);  // a length-6 path closes C7
        CHECK(creates_forbidden(g, ForbiddenFamily::all_odd_except_3(), 0, 7) == expect);
    }
    SECTION("edge present is a precondition error") {
        Graph g(2);
        g.add_edge(0, 1);
        CHECK_THROWS_AS(creates_forbidden(g, ForbiddenFamily::all_odd(), 0, 1),
                        PreconditionError);
    }
}

TEST_CASE("legal_moves") {
    Graph empty(3);
    CHECK(legal_moves(empty, ForbiddenFamily::odd_up_to(1)) ==
          std::vector<Edge>{{0, 1}, {0, 2}, {1, 2}});

    Graph path(3);
    path.add_edge(0, 1);
    path.add_edge(1, 2);
    CHECK(legal_moves(path, ForbiddenFamily::odd_up_to(1)).empty());

    Graph star(4);
    star.add_edge(0, 1);
    star.add_edge(0, 2);
    star.add_edge(0, 3);
    CHECK(legal_moves(star, ForbiddenFamily::odd_up_to(1)).empty());
}

TEST_CASE("is_saturated") {
    Graph k23(5);
    for (int a = 0; a < 2; ++a) {
        for (int b = 2; b < 5; ++b) k23.add_edge(a, b);
    }
    CHECK(is_saturated(k23, ForbiddenFamily::odd_up_to(1)));
    CHECK(is_saturated(k23, ForbiddenFamily::all_odd()));

    Graph k4(4);
    for (int a = 0; a < 4; ++a) {
        for (int b = a + 1; b < 4; ++b) k4.add_edge(a, b);
    }
    CHECK(is_saturated(k4, ForbiddenFamily::all_odd_except_3()));

    Graph one_edge(3);
    one_edge.add_edge(0, 1);
    CHECK_FALSE(is_saturated(one_edge, ForbiddenFamily::odd_up_to(1)));

    Graph c5(5);
    for (int i = 0; i < 5; ++i) c5.add_edge(i, (i + 1) % 5);
    CHECK_THROWS_AS(is_saturated(c5, ForbiddenFamily::odd_up_to(2)), PreconditionError);
}

TEST_CASE("audit_no_forbidden") {
    Graph c6(6);
    for (int i = 0; i < 6; ++i) c6.add_edge(i, (i + 1) % 6);
    CHECK(audit_no_forbidden(c6, ForbiddenFamily::odd_up_to(3)));

    Graph c5(5);
    for (int i = 0; i < 5; ++i) c5.add_edge(i, (i + 1) % 5);
    CHECK_FALSE(audit_no_forbidden(c5, ForbiddenFamily::odd_up_to(2)));
    CHECK(audit_no_forbidden(c5, ForbiddenFamily::odd_up_to(1)));
    CHECK(audit_no_forbidden(c5, ForbiddenFamily::all_odd_except_3()) == false);
    CHECK(audit_no_forbidden(c5, ForbiddenFamily::single(7)));
}

TEST_CASE("oracle equivalence on random graphs") {
    SplitMix64 rng(424242);
    std::vector<ForbiddenFamily> families = {
        ForbiddenFamily::odd_up_to(1), ForbiddenFamily::odd_up_to(2),
        ForbiddenFamily::odd_up_to(3), ForbiddenFamily::single(5),
        ForbiddenFamily::single(7),    ForbiddenFamily::all_odd(),
        ForbiddenFamily::all_odd_except_3()};
    int checked = 0;
    for (int trial = 0; trial < 400; ++trial) {
        int n = 4 + static_cast<int>(rng.next_below(7));  // up to 10
        int m = static_cast<int>(rng.next_below(15));     // up to 14
        Graph g = testing::random_graph(n, m, rng);
        const auto& f = families[trial % families.size()];
        for (int x = 0; x < n; ++x) {
            for (int y = x + 1; y < n; ++y) {
                if (g.has_edge(x, y)) continue;
                bool fast = creates_forbidden(g, f, x, y);
                bool brute = testing::brute_creates_forbidden(g, f, x, y);
                if (fast != brute) {
                    INFO("family " << f.to_string() << " edge (" << x << "," << y << ")\n"
                                   << g.to_text());
                    REQUIRE(fast == brute);
                }
                ++checked;
            }
        }
    }
    CHECK(checked > 4000);
}

TEST_CASE("illegality is monotone under edge additions") {
    SplitMix64 rng(99);
    for (int trial = 0; trial < 60; ++trial) {
        int n = 5 + static_cast<int>(rng.next_below(5));
        Graph g = testing::random_graph(n, n, rng);
        ForbiddenFamily f =
            trial % 2 == 0 ? ForbiddenFamily::odd_up_to(2) : ForbiddenFamily::all_odd_except_3();
        std::vector<Edge> illegal;
        for (int x = 0; x < n; ++x) {
            for (int y = x + 1; y < n; ++y) {
                if (!g.has_edge(x, y) && creates_forbidden(g, f, x, y)) illegal.emplace_back(x, y);
            }
        }
        // Add a few more random edges, then recheck.
        for (int extra = 0; extra < 3; ++extra) {
            int x = static_cast<int>(rng.next_below(n));
            int y = static_cast<int>(rng.next_below(n));
            if (x != y && !g.has_edge(x, y)) g.add_edge(x, y);
        }
        for (const auto& [x, y] : illegal) {
            if (g.has_edge(x, y)) continue;
            CHECK(creates_forbidden(g, f, x, y));
        }
    }
}

TEST_CASE("budget exhaustion raises a distinct error") {
    Graph g(8);
    for (int i = 0; i < 7; ++i) g.add_edge(i, i + 1);
    g.add_edge(0, 2);  // make the component non-bipartite so the search runs
    SearchBudget tiny(1);
    CHECK_THROWS_AS(creates_forbidden(g, ForbiddenFamily::single(7), 0, 7, &tiny),
                    BudgetExceeded);
}
