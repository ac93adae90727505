#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "satgame/max_goodness.hpp"
#include "satgame/players.hpp"

using namespace satgame;

namespace {

MaxGoodState tracked_state(int n, const std::vector<int>& U, const std::vector<int>& V,
                           bool representative = false, int k = 2) {
    MaxGoodState s = representative ? make_representative_state(n, k) : make_basic_state(n, k);
    s.u = U.front();
    s.v = V.front();
    for (int x : U) s.in_U[x] = 1;
    for (int y : V) s.in_V[y] = 1;
    s.started = true;
    return s;
}

/// Plays one game with a manual engine loop so the Max player's internal
/// state is inspectable after every move. Returns the final graph.
Graph run_good_game(MaxGoodPlayer& maxp, Player& minip, int n, const ForbiddenFamily& f) {
    Graph g(n);
    GameRecord rec;
    rec.family = f;
    rec.n = n;
    LegalOracle oracle(g, f);
    maxp.begin_game(n, f, Side::Max);
    minip.begin_game(n, f, Side::Mini);
    Side to_move = Side::Max;
    while (true) {
        Player& p = to_move == Side::Max ? static_cast<Player&>(maxp) : minip;
        bool isolated_before = g.smallest_isolated().has_value();
        auto mv = p.choose(g, f, rec, to_move, oracle);
        if (!mv) {
            REQUIRE_FALSE(oracle.first_legal().has_value());
            break;
        }
        REQUIRE(oracle.is_legal(mv->first, mv->second));
        maxp.observe(g, *mv, to_move);
        minip.observe(g, *mv, to_move);
        g.add_edge(mv->first, mv->second);
        oracle.note_edge_added(mv->first, mv->second);
        rec.moves.push_back({static_cast<int>(g.edge_count()), *mv, to_move, p.annotation()});
        if (to_move == Side::Max && isolated_before && !maxp.in_endgame()) {
            auto report = check_gamma_good(maxp.state(), g);
            INFO("t=" << g.edge_count() << " witness: " << report.witness);
            CHECK(report.ok());
            if (maxp.state().representative) {
                auto sets = compute_goodness_sets(maxp.state(), g);
                CHECK(sets.U1.size() * maxp.state().k <= 4 * sets.U.size());
                CHECK(sets.V1.size() * maxp.state().k <= 4 * sets.V.size());
                auto du = g.distances_from(maxp.state().u);
                auto dv = g.distances_from(maxp.state().v);
                for (int x : sets.tilde_U1) CHECK(du[x] == maxp.state().ell);
                for (int y : sets.tilde_V1) CHECK(dv[y] == maxp.state().ell);
            }
        }
        to_move = other_side(to_move);
    }
    return g;
}

}  // namespace

TEST_CASE("gamma_k values and root property") {
    CHECK(std::abs(gamma_k(4) - (1.0 + std::sqrt(5.0)) / 2.0) < 1e-12);
    CHECK(std::abs(gamma_k(100) - 1.0202) < 1e-4);
    double prev = 2.0;
    for (int k = 3; k <= 10000; ++k) {
        double gk = gamma_k(k);
        CHECK(gk > 1.0);
        CHECK(gk <= 2.0);
        CHECK(gk < prev);
        CHECK(std::abs(-gk * gk + 4.0 * gk / k + 1.0) < 1e-12);
        prev = gk;
    }
    CHECK_THROWS_AS(gamma_k(2), PreconditionError);
}

TEST_CASE("classify_move") {
    Graph g(5);
    g.add_edge(0, 1);
    MaxGoodState s = tracked_state(5, {0}, {1});
    CHECK(classify_move(s, g, make_edge(0, 2)) == MoveType::AV);
    CHECK(classify_move(s, g, make_edge(1, 2)) == MoveType::AU);
    CHECK(classify_move(s, g, make_edge(2, 3)) == MoveType::O);

    MaxGoodState s2 = tracked_state(5, {0, 2}, {1, 3});
    CHECK(classify_move(s2, g, make_edge(2, 3)) == MoveType::I);
    CHECK_THROWS_AS(classify_move(s2, g, make_edge(0, 2)), StrategyError);
    CHECK_THROWS_AS(classify_move(s2, g, make_edge(1, 3)), StrategyError);
}

TEST_CASE("detect_state") {
    SECTION("nice") {
        Graph g(6);
        for (int x : {2, 4}) g.add_edge(x, 1);
        for (int y : {3, 5}) g.add_edge(0, y);
        g.add_edge(0, 1);
        MaxGoodState s = tracked_state(6, {0, 2, 4}, {1, 3, 5});
        CHECK(detect_state(s, g) == GoodState::N);
    }
    SECTION("overflow U") {
        Graph g(9);
        g.add_edge(0, 1);
        for (int x = 2; x <= 7; ++x) g.add_edge(x, 1);
        g.add_edge(0, 8);
        MaxGoodState s = tracked_state(9, {0, 2, 3, 4, 5, 6, 7}, {1, 8});
        CHECK(detect_state(s, g) == GoodState::OU);  // 7 > 1.5 * 2 + 2
    }
    SECTION("clean-up") {
        Graph g(8);
        g.add_edge(0, 1);
        g.add_edge(1, 2);
        g.add_edge(1, 4);
        g.add_edge(3, 6);  // 6 in U without an edge to v
        for (int y : {3, 5, 7}) g.add_edge(0, y);
        MaxGoodState s = tracked_state(8, {0, 2, 4, 6}, {1, 3, 5, 7});
        CHECK(detect_state(s, g) == GoodState::C);
    }
}

TEST_CASE("check_gamma_good") {
    SECTION("first edge is good") {
        Graph g(4);
        g.add_edge(0, 1);
        MaxGoodState s = tracked_state(4, {0}, {1});
        auto r = check_gamma_good(s, g);
        CHECK(r.ok());
        CHECK(r.b_U == Catch::Approx(-2.5));
        CHECK(r.b_V == Catch::Approx(-2.5));
    }
    SECTION("imbalance fails the balance condition") {
        Graph g(12);
        g.add_edge(0, 1);
        for (int x = 2; x <= 10; ++x) g.add_edge(x, 1);
        std::vector<int> U = {0, 2, 3, 4, 5, 6, 7, 8, 9, 10};
        g.add_edge(0, 11);
        MaxGoodState s = tracked_state(12, U, {1, 11});
        auto r = check_gamma_good(s, g);
        CHECK_FALSE(r.balance_ok);
        CHECK(r.b_U > 0.0);
        CHECK_FALSE(r.ok());
        CHECK_FALSE(r.witness.empty());
    }
    SECTION("uncovered vertex fails the cover condition") {
        Graph g(6);
        g.add_edge(0, 1);
        g.add_edge(0, 3);
        g.add_edge(3, 2);  // 2's only neighbor 3 is in V0, fine
        g.add_edge(2, 5);  // 5's only neighbor 2 is in U1: uncovered
        MaxGoodState s = tracked_state(6, {0, 2}, {1, 3, 5});
        auto r = check_gamma_good(s, g);
        CHECK(r.component_ok);
        CHECK_FALSE(r.cover_ok);
    }
}

TEST_CASE("respond to an outside move") {
    // After e^1 = uv, Mini plays a fresh pair; Max merges it toward v.
    Graph g(4);
    g.add_edge(0, 1);
    g.add_edge(2, 3);
    MaxGoodState s = tracked_state(4, {0}, {1});
    LegalOracle oracle(g, ForbiddenFamily::odd_up_to(2));
    Edge e = respond(s, g, make_edge(2, 3), oracle);
    CHECK(e == make_edge(1, 2));
    Graph after = g;
    after.add_edge(e.first, e.second);
    auto sets = compute_goodness_sets(s, after);
    CHECK(sets.U == std::vector<int>{0, 2});
    CHECK(sets.V == std::vector<int>{1, 3});
    CHECK(sets.U1.empty());
    CHECK(sets.V1 == std::vector<int>{3});
    auto r = check_gamma_good(s, after);
    INFO(r.witness);
    CHECK(r.ok());
}

TEST_CASE("find_representative") {
    // Path of length 6 from u, with a diamond giving two distance-4 choices.
    Graph g(10);
    g.add_edge(0, 1);
    g.add_edge(0, 2);
    g.add_edge(2, 3);
    g.add_edge(3, 4);
    g.add_edge(4, 5);
    g.add_edge(4, 6);
    g.add_edge(5, 7);
    g.add_edge(6, 7);
    g.add_edge(7, 8);
    MaxGoodState s = tracked_state(10, {0, 3, 5, 6, 8}, {1, 2, 4, 7}, true, 5);  // ell = 6
    CHECK(find_representative(s, g, 8) == 5);
    CHECK_THROWS_AS(find_representative(s, g, 4), PreconditionError);  // distance 3 < ell

    MaxGoodState basic = tracked_state(10, {0}, {1});
    CHECK_THROWS_AS(find_representative(basic, g, 8), PreconditionError);
}

TEST_CASE("representative clean-up fix goes through the representative") {
    // k=5 (ell=6): u-path 0-2-3-4-5-6-7 puts 7 at distance 6, representative 5.
    Graph g(10);
    g.add_edge(0, 1);
    g.add_edge(0, 2);
    g.add_edge(2, 3);
    g.add_edge(3, 4);
    g.add_edge(4, 5);
    g.add_edge(5, 6);
    g.add_edge(6, 7);
    MaxGoodState s = tracked_state(10, {0, 3, 5, 7}, {1, 2, 4, 6}, true, 5);
    Graph before = g;
    g.add_edge(7, 8);  // Mini: AV move, fresh 8 joins V
    LegalOracle oracle(g, ForbiddenFamily::odd_up_to(5));
    std::optional<GoodState> st;
    MoveType mt{};
    Edge e = respond(s, g, make_edge(7, 8), oracle, &st, &mt);
    CHECK(mt == MoveType::AV);
    REQUIRE(st.has_value());
    CHECK(*st == GoodState::C);
    CHECK(e == make_edge(1, 5));
    CHECK(s.in_V[8] == 1);
    (void)before;
}

TEST_CASE("endgame_fixup") {
    Graph g(4);
    g.add_edge(0, 1);
    g.add_edge(0, 3);
    g.add_edge(2, 3);
    MaxGoodState s = tracked_state(4, {0, 2}, {1, 3});
    LegalOracle oracle(g, ForbiddenFamily::odd_up_to(2));
    auto e = endgame_fixup(s, g, oracle);  // (2,0) closes a triangle; (2,1) is the fix
    REQUIRE(e.has_value());
    CHECK(*e == make_edge(1, 2));

    Graph done(3);
    done.add_edge(0, 1);
    done.add_edge(0, 2);
    MaxGoodState s2 = tracked_state(3, {0}, {1, 2});
    LegalOracle oracle2(done, ForbiddenFamily::odd_up_to(2));
    CHECK_FALSE(endgame_fixup(s2, done, oracle2).has_value());
}

TEST_CASE("basic strategy keeps positions 3/2-good to the end") {
    ForbiddenFamily f = ForbiddenFamily::odd_up_to(2);
    auto final_checks = [&](const Graph& g, int n) {
        auto parts = g.bipartition_of(0);
        REQUIRE(parts.has_value());
        auto [a, b] = *parts;
        CHECK(static_cast<long long>(a.size()) * b.size() == g.edge_count());
        double ratio_slack = 1.5 * static_cast<double>(b.size()) + 2.0 + 2.0;
        double ratio_slack2 = 1.5 * static_cast<double>(a.size()) + 2.0 + 2.0;
        CHECK(static_cast<double>(a.size()) <= ratio_slack);
        CHECK(static_cast<double>(b.size()) <= ratio_slack2);
        double lower = (6.0 / 25.0) * (n - 4.0) * (n - 4.0);
        CHECK(static_cast<double>(g.edge_count()) >= lower);
    };
    for (int n : {10, 21, 30}) {
        {
            MaxGoodPlayer maxp;
            FirstLegalPlayer fl;
            final_checks(run_good_game(maxp, fl, n, f), n);
        }
        {
            MaxGoodPlayer maxp;
            GreedyDegreePlayer gd;
            final_checks(run_good_game(maxp, gd, n, f), n);
        }
        for (std::uint64_t seed : {7u, 99u}) {
            MaxGoodPlayer maxp;
            RandomPlayer rnd(seed);
            final_checks(run_good_game(maxp, rnd, n, f), n);
        }
    }
}

TEST_CASE("representative strategy keeps positions gamma_k-good") {
    for (int k : {3, 5}) {
        ForbiddenFamily f = ForbiddenFamily::odd_up_to(k);
        {
            MaxGoodPlayer maxp(true);
            FirstLegalPlayer fl;
            run_good_game(maxp, fl, 26, f);
        }
        for (std::uint64_t seed : {11u, 12u}) {
            MaxGoodPlayer maxp(true);
            RandomPlayer rnd(seed);
            run_good_game(maxp, rnd, 26, f);
        }
    }
}

TEST_CASE("player wiring: annotations, preconditions, determinism") {
    MaxGoodPlayer maxp;
    RandomPlayer rnd(5);
    auto res = play_game(maxp, rnd, 14, ForbiddenFamily::odd_up_to(2));
    REQUIRE_FALSE(res.record.aborted);
    CHECK(verify_record(res.record).empty());
    bool saw_type = false;
    for (const auto& m : res.record.moves) {
        if (m.mover == Side::Max && m.annotation.contains("move_type")) saw_type = true;
    }
    CHECK(saw_type);

    MaxGoodPlayer again;
    RandomPlayer rnd2(5);
    auto res2 = play_game(again, rnd2, 14, ForbiddenFamily::odd_up_to(2));
    REQUIRE(res.record.moves.size() == res2.record.moves.size());
    for (size_t i = 0; i < res.record.moves.size(); ++i) {
        CHECK(res.record.moves[i].edge == res2.record.moves[i].edge);
    }

    MaxGoodPlayer wrong;
    CHECK_THROWS_AS(wrong.begin_game(10, ForbiddenFamily::all_odd(), Side::Max),
                    PreconditionError);
    CHECK_THROWS_AS(wrong.begin_game(10, ForbiddenFamily::odd_up_to(2), Side::Mini),
                    PreconditionError);
    MaxGoodPlayer rep_small(true);
    CHECK_THROWS_AS(rep_small.begin_game(10, ForbiddenFamily::odd_up_to(2), Side::Max),
                    PreconditionError);
}
