#include <catch2/catch_amalgamated.hpp>

#include "satgame/players.hpp"
#include "satgame/single_cycle.hpp"
#include "tests/oracles.hpp"

using namespace satgame;

namespace {

/// Plays a fixed move list, then first legal.
class ScriptedPlayer : public Player {
public:
    explicit ScriptedPlayer(std::vector<Edge> moves) : moves_(std::move(moves)) {}
    std::string name() const override { return "scripted"; }
    void begin_game(int, const ForbiddenFamily&, Side) override { next_ = 0; }
    std::optional<Edge> choose(const Graph&, const ForbiddenFamily&, const GameRecord&, Side,
                               LegalOracle& oracle) override {
        if (next_ < moves_.size()) return moves_[next_++];
        return oracle.first_legal();
    }

private:
    std::vector<Edge> moves_;
    size_t next_ = 0;
};

/// Scaffold shape audit straight off the final state and graph.
void audit_scaffold(const ScaffoldState& s, const Graph& g) {
    REQUIRE(static_cast<int>(s.clique.size()) == s.ell);
    for (int j = 1; j < s.ell; ++j) {
        for (int i = 0; i < j; ++i) CHECK(g.has_edge(s.clique[i], s.clique[j]));
    }
    std::set<int> seen;
    for (int j = 0; j < s.ell; ++j) {
        const auto& p = s.paths[j];
        REQUIRE(static_cast<int>(p.size()) == s.k - 1);
        CHECK(p.front() == s.clique[j]);
        for (size_t i = 0; i + 1 < p.size(); ++i) CHECK(g.has_edge(p[i], p[i + 1]));
        for (int w : p) CHECK(seen.insert(w).second);  // vertex-disjoint
    }
}

}  // namespace

TEST_CASE("clique size and deadline formulas") {
    CHECK(scaffold_clique_size(2) == 3);
    CHECK(scaffold_deadline(2) == 6);
    CHECK(scaffold_clique_size(3) == 3);
    CHECK(scaffold_deadline(3) == 12);
    CHECK(scaffold_clique_size(5) == 3);
    CHECK(scaffold_deadline(5) == 24);
    CHECK(scaffold_clique_size(8) == 4);
    CHECK(scaffold_deadline(8) == 60);
    CHECK_THROWS_AS(scaffold_clique_size(1), PreconditionError);
}

TEST_CASE("scaffold is complete by the deadline") {
    for (int k : {2, 3, 5}) {
        ForbiddenFamily f = ForbiddenFamily::single(2 * k + 1);
        int t0 = scaffold_deadline(k);
        int n = std::max(80, 4 * t0);
        FirstLegalPlayer fl;
        GreedyDegreePlayer gd;
        RandomPlayer rnd(321);
        for (Player* maxp : {static_cast<Player*>(&fl), static_cast<Player*>(&gd),
                             static_cast<Player*>(&rnd)}) {
            SingleCyclePlayer mini;
            Graph g(n);
            LegalOracle oracle(g, f);
            maxp->begin_game(n, f, Side::Max);
            mini.begin_game(n, f, Side::Mini);
            GameRecord rec;
            Side to_move = Side::Max;
            int t = 0;
            while (t < t0) {
                Player& p = to_move == Side::Max ? *maxp : static_cast<Player&>(mini);
                auto mv = p.choose(g, f, rec, to_move, oracle);
                REQUIRE(mv.has_value());
                REQUIRE(oracle.is_legal(mv->first, mv->second));
                maxp->observe(g, *mv, to_move);
                mini.observe(g, *mv, to_move);
                g.add_edge(mv->first, mv->second);
                oracle.note_edge_added(mv->first, mv->second);
                to_move = other_side(to_move);
                ++t;
            }
            INFO("k=" << k << " max=" << maxp->name());
            CHECK(scaffold_complete(mini.state(), g));
            CHECK_FALSE(mini.state().forfeited);
            audit_scaffold(mini.state(), g);
        }
    }
}

TEST_CASE("builder re-targets vertices Max occupies") {
    // Max grabs small-index vertices so the planned clique spots shift.
    ForbiddenFamily f = ForbiddenFamily::single(7);  // k = 3
    ScriptedPlayer maxp({{10, 11}, {0, 12}, {1, 13}, {3, 14}, {4, 15}, {2, 16}});
    SingleCyclePlayer mini;
    int n = 60;
    Graph g(n);
    LegalOracle oracle(g, f);
    maxp.begin_game(n, f, Side::Max);
    mini.begin_game(n, f, Side::Mini);
    GameRecord rec;
    Side to_move = Side::Max;
    for (int t = 0; t < scaffold_deadline(3); ++t) {
        Player& p = to_move == Side::Max ? static_cast<Player&>(maxp)
                                         : static_cast<Player&>(mini);
        auto mv = p.choose(g, f, rec, to_move, oracle);
        REQUIRE(mv.has_value());
        maxp.observe(g, *mv, to_move);
        mini.observe(g, *mv, to_move);
        g.add_edge(mv->first, mv->second);
        oracle.note_edge_added(mv->first, mv->second);
        to_move = other_side(to_move);
    }
    CHECK(scaffold_complete(mini.state(), g));
    CHECK_FALSE(mini.state().forfeited);
    audit_scaffold(mini.state(), g);
}

TEST_CASE("funnel responses") {
    // Hand-built funneling state for k = 3: triangle 0,1,2 with pendant
    // endpoints 3,4,5.
    ScaffoldState s = make_scaffold_state(3);
    s.clique = {0, 1, 2};
    s.paths = {{0, 3}, {1, 4}, {2, 5}};
    s.funneling = true;
    Graph g(20);
    for (auto [a, b] : {std::pair{0, 1}, {0, 2}, {1, 2}, {0, 3}, {1, 4}, {2, 5}}) {
        g.add_edge(a, b);
    }
    ForbiddenFamily f = ForbiddenFamily::single(7);

    SECTION("smallest isolated onto the lightest endpoint, ties to smallest j") {
        LegalOracle oracle(g, f);
        int vt = -1;
        auto e = respond_funnel(s, g, make_edge(3, 4), oracle, &vt);
        CHECK(vt == 3);
        CHECK(e == make_edge(3, 6));
    }

    SECTION("Max pairing two isolated vertices redirects one of them") {
        Graph g2 = g;
        g2.add_edge(8, 9);
        LegalOracle oracle(g2, f);
        int vt = -1;
        auto e = respond_funnel(s, g2, make_edge(8, 9), oracle, &vt);
        CHECK(e == make_edge(3, 8));
        CHECK(vt == 3);
    }

    SECTION("degree ties break to the earliest endpoint") {
        Graph g2 = g;
        g2.add_edge(3, 6);  // endpoint 3 now heavier
        LegalOracle oracle(g2, f);
        int vt = -1;
        respond_funnel(s, g2, make_edge(3, 6), oracle, &vt);
        CHECK(vt == 4);
    }

    SECTION("no isolated vertices falls back to first legal") {
        Graph g2(6);
        for (auto [a, b] : {std::pair{0, 1}, {0, 2}, {1, 2}, {0, 3}, {1, 4}, {2, 5}}) {
            g2.add_edge(a, b);
        }
        LegalOracle oracle(g2, f);
        auto e = respond_funnel(s, g2, make_edge(0, 3), oracle);
        LegalOracle fresh(g2, f);
        CHECK(e == fresh.first_legal());
    }
}

TEST_CASE("final-structure checker catches planted violations") {
    ScaffoldState s = make_scaffold_state(3);
    s.clique = {0, 1, 2};
    s.paths = {{0, 3}, {1, 4}, {2, 5}};
    s.funneling = true;
    auto base = [] {
        Graph g(30);
        for (auto [a, b] : {std::pair{0, 1}, {0, 2}, {1, 2}, {0, 3}, {1, 4}, {2, 5}}) {
            g.add_edge(a, b);
        }
        return g;
    };

    SECTION("cross edge between two funnel sets") {
        Graph g = base();
        g.add_edge(3, 6);
        g.add_edge(4, 7);
        g.add_edge(6, 7);
        auto r = check_final_structure(s, g);
        CHECK_FALSE(r.no_cross_edges);
        CHECK_FALSE(r.witness.empty());
    }

    SECTION("outside vertex touching two funnel sets") {
        Graph g = base();
        g.add_edge(3, 6);
        g.add_edge(4, 7);
        g.add_edge(8, 6);
        g.add_edge(8, 7);
        auto r = check_final_structure(s, g);
        CHECK(r.no_cross_edges);
        CHECK_FALSE(r.outside_single);
    }

    SECTION("shared neighbors of one endpoint are fine") {
        Graph g = base();
        g.add_edge(3, 6);
        g.add_edge(3, 7);
        g.add_edge(8, 6);
        g.add_edge(8, 7);
        auto r = check_final_structure(s, g);
        CHECK(r.no_cross_edges);
        CHECK(r.outside_single);
    }

    SECTION("long path inside one neighborhood") {
        Graph g = base();
        // Path on 6 = 2k vertices inside N(3).
        for (int w = 6; w <= 11; ++w) g.add_edge(3, w);
        for (int w = 6; w <= 10; ++w) g.add_edge(w, w + 1);
        auto r = check_final_structure(s, g);
        CHECK_FALSE(r.no_long_path);
    }

    SECTION("endpoint degree floor scales with n") {
        Graph g = base();  // n = 30, floor = 30/6 - 14 < 0: passes
        CHECK(check_final_structure(s, g).endpoint_floor);
        ScaffoldState s2 = s;
        s2.t0 = 0;  // floor becomes 3; endpoints have degree 1
        CHECK_FALSE(check_final_structure(s2, g).endpoint_floor);
    }

    SECTION("recorded cycle neighbor cap") {
        Graph g = base();
        ScaffoldState s2 = s;
        s2.cycles = {{6, 7, 8, 9, 10, 11, 12}};
        for (int i = 6; i < 12; ++i) g.add_edge(i, i + 1);
        g.add_edge(12, 6);
        CHECK(check_final_structure(s2, g).cycle_neighbors);
        g.add_edge(13, 6);
        g.add_edge(13, 8);
        g.add_edge(13, 10);
        CHECK_FALSE(check_final_structure(s2, g).cycle_neighbors);
    }
}

TEST_CASE("full games satisfy the structural audit") {
    for (int k : {2, 3}) {
        ForbiddenFamily f = ForbiddenFamily::single(2 * k + 1);
        int n = k == 3 ? 120 : 80;
        FirstLegalPlayer fl;
        SingleCyclePlayer mini;
        auto res = play_game(fl, mini, n, f);
        REQUIRE_FALSE(res.record.aborted);
        CHECK(verify_record(res.record).empty());
        CHECK_FALSE(res.record.forfeits.at("single_cycle_forfeit"));
        auto r = check_final_structure(mini.state(), res.final_graph);
        INFO("k=" << k << " witness: " << r.witness);
        CHECK(r.ok());
        double ell = scaffold_clique_size(k);
        double bound = (1.0 / 12.0) * (1.0 + 1.0 / ell) * (1.0 + 1.0 / ell) * n * n +
                       3.0 * scaffold_deadline(k) * n;
        CHECK(static_cast<double>(res.record.final_edge_count) <= bound);
    }
}

TEST_CASE("player wiring") {
    ForbiddenFamily f = ForbiddenFamily::single(7);

    SECTION("annotations and determinism") {
        FirstLegalPlayer a1, a2;
        SingleCyclePlayer b1, b2;
        auto r1 = play_game(a1, b1, 60, f);
        auto r2 = play_game(a2, b2, 60, f);
        REQUIRE_FALSE(r1.record.aborted);
        REQUIRE(r1.record.moves.size() == r2.record.moves.size());
        bool saw_build = false, saw_funnel = false;
        for (size_t i = 0; i < r1.record.moves.size(); ++i) {
            CHECK(r1.record.moves[i].edge == r2.record.moves[i].edge);
            const auto& m = r1.record.moves[i];
            if (m.mover != Side::Mini) continue;
            REQUIRE(m.annotation.contains("stage"));
            if (m.annotation["stage"] == "build") saw_build = true;
            if (m.annotation["stage"] == "funnel") {
                saw_funnel = true;
                CHECK(m.annotation.contains("v_t"));
                CHECK(m.annotation["endpoint_degrees"].size() == 3);
            }
        }
        CHECK(saw_build);
        CHECK(saw_funnel);
    }

    SECTION("tiny board forfeits but finishes") {
        FirstLegalPlayer fl;
        SingleCyclePlayer mini;
        auto res = play_game(fl, mini, 6, ForbiddenFamily::single(17));  // k = 8 scaffold
        REQUIRE_FALSE(res.record.aborted);
        CHECK(res.record.forfeits.at("single_cycle_forfeit"));
    }

    SECTION("preconditions") {
        SingleCyclePlayer mini;
        CHECK_THROWS_AS(mini.begin_game(10, f, Side::Max), PreconditionError);
        CHECK_THROWS_AS(mini.begin_game(10, ForbiddenFamily::all_odd(), Side::Mini),
                        PreconditionError);
        CHECK_THROWS_AS(mini.begin_game(10, ForbiddenFamily::single(3), Side::Mini),
                        PreconditionError);
    }
}
