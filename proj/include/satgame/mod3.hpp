#ifndef SATGAME_MOD3_HPP
#define SATGAME_MOD3_HPP

#include <algorithm>
#include <optional>
#include <vector>

#include "satgame/engine.hpp"
#include "satgame/legality.hpp"

namespace satgame {

/// Does the edge (x,y) lie in a triangle, i.e. do x and y share a neighbor?
inline bool edge_in_triangle(const Graph& g, int x, int y) {
    const auto& ax = g.neighbors(x);
    const auto& ay = g.neighbors(y);
    auto i = ax.begin();
    auto j = ay.begin();
    while (i != ax.end() && j != ay.end()) {
        if (*i == *j) return true;
        if (*i < *j) ++i;
        else ++j;
    }
    return false;
}

/// All but at most one incident edge lies in a triangle.
inline bool is_vertex_good(const Graph& g, int x) {
    int loose = 0;
    for (int w : g.neighbors(x)) {
        if (!edge_in_triangle(g, x, w) && ++loose > 1) return false;
    }
    return true;
}

inline std::vector<Edge> non_triangle_edges(const Graph& g) {
    std::vector<Edge> out;
    for (const auto& [x, y] : g.edges()) {
        if (!edge_in_triangle(g, x, y)) out.emplace_back(x, y);
    }
    return out;
}

/// Minimum edge set (size <= cap) whose removal leaves every vertex good, or
/// nullopt if no such set exists within cap. Ties lexicographic.
///
/// Removing non-triangle edges destroys no triangle, and for any working set
/// B its restriction to non-triangle edges still works, so minimum sets
/// consist of non-triangle edges incident to bad vertices. That reduces the
/// problem to a small exact cover enumeration.
inline std::optional<std::vector<Edge>> min_bad_set(const Graph& g, int cap) {
    if (cap > 3) throw PreconditionError("min_bad_set cap limited to 3 (exhaustive regime)");
    std::vector<int> loose_count(g.n(), 0);
    std::vector<Edge> loose = non_triangle_edges(g);
    for (const auto& [x, y] : loose) {
        ++loose_count[x];
        ++loose_count[y];
    }
    std::vector<char> bad(g.n(), 0);
    bool any_bad = false;
    for (int v = 0; v < g.n(); ++v) {
        if (loose_count[v] >= 2) {
            bad[v] = 1;
            any_bad = true;
        }
    }
    if (!any_bad) return std::vector<Edge>{};

    std::vector<Edge> candidates;
    for (const auto& e : loose) {
        if (bad[e.first] || bad[e.second]) candidates.push_back(e);
    }
    std::sort(candidates.begin(), candidates.end());

    auto works = [&](const std::vector<Edge>& chosen) {
        for (int v = 0; v < g.n(); ++v) {
            if (!bad[v]) continue;
            int covered = 0;
            for (const auto& [x, y] : chosen) {
                if (x == v || y == v) ++covered;
            }
            if (loose_count[v] - covered > 1) return false;
        }
        return true;
    };

    int m = static_cast<int>(candidates.size());
    for (int size = 1; size <= cap; ++size) {
        std::vector<int> pick(size);
        // Lexicographic enumeration of index combinations.
        for (int i = 0; i < size; ++i) pick[i] = i;
        if (size > m) break;
        while (true) {
            std::vector<Edge> chosen;
            for (int i : pick) chosen.push_back(candidates[i]);
            if (works(chosen)) return chosen;
            int pos = size - 1;
            while (pos >= 0 && pick[pos] == m - size + pos) --pos;
            if (pos < 0) break;
            ++pick[pos];
            for (int i = pos + 1; i < size; ++i) pick[i] = pick[i - 1] + 1;
        }
    }
    return std::nullopt;
}

struct Mod3State {
    Side side = Side::Max;
    std::vector<Edge> bad_edges;
    int last_verified_goodness = -1;
};

/// One turn of the either-side strategy for the AllOddExcept3 game: play
/// arbitrarily from 0-good positions, otherwise join two loose neighbors of a
/// bad vertex (always legal; an illegal witness move falsifies the strategy's
/// soundness argument and aborts hard).
inline std::optional<Edge> respond_p3alg(Mod3State& s, const Graph& g, LegalOracle& oracle) {
    // Smallest bad vertex, then its two smallest loose neighbors.
    for (int x = 0; x < g.n(); ++x) {
        int v1 = -1, v2 = -1;
        for (int w : g.neighbors(x)) {
            if (edge_in_triangle(g, x, w)) continue;
            if (v1 < 0) {
                v1 = w;
            } else {
                v2 = w;
                break;
            }
        }
        if (v2 < 0) continue;
        Edge move = make_edge(v1, v2);
        if (!oracle.is_legal(move.first, move.second)) {
            throw StrategyError("witness move (" + std::to_string(move.first) + "," +
                                std::to_string(move.second) + ") illegal; position invariant broken");
        }
        auto bs = min_bad_set(g, 3);
        s.bad_edges = bs ? *bs : std::vector<Edge>{};
        s.last_verified_goodness = static_cast<int>(s.bad_edges.size());
        return move;
    }
    // 0-good: arbitrary legal move (nullopt at saturation).
    s.bad_edges.clear();
    s.last_verified_goodness = 0;
    return oracle.first_legal();
}

class Mod3Player : public Player {
public:
    std::string name() const override { return "p3alg"; }

    void begin_game(int, const ForbiddenFamily& f, Side side) override {
        if (f.kind != FamilyKind::AllOddExcept3) {
            throw PreconditionError("p3alg plays the allodd-except-3 game only");
        }
        state_ = Mod3State{side, {}, 0};
    }

    std::optional<Edge> choose(const Graph& g, const ForbiddenFamily&, const GameRecord&, Side,
                               LegalOracle& oracle) override {
        return respond_p3alg(state_, g, oracle);
    }

    nlohmann::json annotation() const override {
        return {{"bad_set_size", state_.last_verified_goodness}};
    }

    const Mod3State& state() const { return state_; }

private:
    Mod3State state_;
};

/// k disjoint triangles plus an apex adjacent to everything: 3k+1 vertices,
/// 6k edges, the largest {C_5,C_6,...}-free graph at its order.
inline Graph construct_extremal(int k) {
    if (k < 1) throw PreconditionError("construct_extremal requires k >= 1");
    Graph g(3 * k + 1);
    int apex = 3 * k;
    for (int i = 0; i < k; ++i) {
        int a = 3 * i, b = 3 * i + 1, c = 3 * i + 2;
        g.add_edge(a, b);
        g.add_edge(b, c);
        g.add_edge(a, c);
        g.add_edge(a, apex);
        g.add_edge(b, apex);
        g.add_edge(c, apex);
    }
    return g;
}

/// Edge uv plus triangles u-v-x_i and pendant edges x_i-y_i: 2k+2 vertices,
/// 3k+1 edges, 0-good, no odd cycle beyond C_3.
inline Graph construct_g1(int k) {
    if (k < 1) throw PreconditionError("construct_g1 requires k >= 1");
    Graph g(2 * k + 2);
    int u = 0, v = 1;
    g.add_edge(u, v);
    for (int i = 0; i < k; ++i) {
        int x = 2 * i + 2, y = 2 * i + 3;
        g.add_edge(x, u);
        g.add_edge(x, v);
        g.add_edge(x, y);
    }
    return g;
}

/// Chain of K_4's joined by x_i-y_{i+1} bridges, a leaf on every remaining
/// degree-3 vertex: 6k+2 vertices, 9k+1 edges, 0-good, no odd cycle beyond C_3.
inline Graph construct_g2(int k) {
    if (k < 1) throw PreconditionError("construct_g2 requires k >= 1");
    Graph g(6 * k + 2);
    auto x = [](int i) { return 4 * i; };
    auto y = [](int i) { return 4 * i + 1; };
    for (int i = 0; i < k; ++i) {
        for (int a = 0; a < 4; ++a) {
            for (int b = a + 1; b < 4; ++b) g.add_edge(4 * i + a, 4 * i + b);
        }
    }
    for (int i = 0; i + 1 < k; ++i) g.add_edge(x(i), y(i + 1));
    int next_leaf = 4 * k;
    for (int v = 0; v < 4 * k; ++v) {
        if (g.degree(v) == 3) g.add_edge(v, next_leaf++);
    }
    return g;
}

/// True iff g has no cycle of length >= 5 (either parity).
inline bool check_no_long_cycle(const Graph& g, SearchBudget* budget = nullptr) {
    for (const auto& [a, b] : g.edges()) {
        Graph reduced = g.without_edge(a, b);
        if (!reduced.same_component(a, b)) continue;
        if (has_long_path(reduced, a, b, 4, budget)) return false;
    }
    return true;
}

}  // namespace satgame

#endif
