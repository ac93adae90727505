#ifndef SATGAME_SINGLE_CYCLE_HPP
#define SATGAME_SINGLE_CYCLE_HPP

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "satgame/engine.hpp"

namespace satgame {

inline int scaffold_clique_size(int k) {
    if (k < 2) throw PreconditionError("single-cycle strategy requires k >= 2");
    return std::max(3, static_cast<int>(std::floor(std::sqrt(2.0 * k))));
}

inline int scaffold_deadline(int k) {
    int ell = scaffold_clique_size(k);
    return ell * (ell - 1) + 2 * ell * (k - 2);
}

/// Mini's bookkeeping for the {C_{2k+1}} game: a clique on ell vertices with
/// ell disjoint length-(k-2) paths hanging off it, then a funnel of isolated
/// vertices onto the path endpoints.
struct ScaffoldState {
    int k = 2;
    int ell = 3;
    int t0 = 6;
    std::vector<int> clique;               // u_1.. as assigned so far
    std::vector<std::vector<int>> paths;   // path j: [u_j, ..., v_j]
    bool funneling = false;
    bool forfeited = false;
    std::vector<std::vector<int>> cycles;  // recorded C_{2k+1}s (none arise here)

    int endpoint(int j) const { return paths[j].back(); }
};

inline ScaffoldState make_scaffold_state(int k) {
    ScaffoldState s;
    s.k = k;
    s.ell = scaffold_clique_size(k);
    s.t0 = scaffold_deadline(k);
    return s;
}

/// All clique edges present and every path grown to length k-2.
inline bool scaffold_complete(const ScaffoldState& s, const Graph& g) {
    if (static_cast<int>(s.clique.size()) < s.ell) return false;
    for (int j = 1; j < s.ell; ++j) {
        for (int i = 0; i < j; ++i) {
            if (!g.has_edge(s.clique[i], s.clique[j])) return false;
        }
    }
    for (const auto& p : s.paths) {
        if (static_cast<int>(p.size()) < s.k - 1) return false;
    }
    return true;
}

/// Next scaffold edge: missing clique edges in lexicographic (i, j) order
/// first, assigning u_j to the smallest isolated vertex when first needed,
/// then path growth one pendant edge at a time. Every such move is legal
/// (small graphs hold no C_{2k+1}; pendant edges close no cycle), so an
/// oracle rejection re-targets or falls back with the forfeit flag set.
inline std::optional<Edge> respond_build(ScaffoldState& s, const Graph& g,
                                         LegalOracle& oracle) {
    auto fallback = [&]() {
        s.forfeited = true;
        return oracle.first_legal();
    };
    auto next_isolated = [&](int after) -> std::optional<int> {
        for (int w = after + 1; w < g.n(); ++w) {
            if (g.degree(w) == 0) return w;
        }
        return std::nullopt;
    };

    for (int j = 1; j < s.ell; ++j) {
        bool fresh = j >= static_cast<int>(s.clique.size());
        if (fresh) {
            while (static_cast<int>(s.clique.size()) <= j) {
                // The smallest isolated vertex not already claimed.
                int from = -1;
                std::optional<int> z;
                do {
                    z = next_isolated(from);
                    if (!z) return fallback();
                    from = *z;
                } while (std::find(s.clique.begin(), s.clique.end(), *z) != s.clique.end());
                s.clique.push_back(*z);
                s.paths.push_back({*z});
            }
        }
        for (int i = 0; i < j; ++i) {
            Edge e = make_edge(s.clique[i], s.clique[j]);
            if (g.has_edge(e.first, e.second)) continue;
            if (oracle.is_legal(e.first, e.second)) return e;
            if (!fresh) return fallback();
            // Re-target the just-claimed u_j and retry once per candidate.
            int from = s.clique[j];
            while (true) {
                auto z = next_isolated(from);
                if (!z) return fallback();
                from = *z;
                s.clique[j] = *z;
                s.paths[j] = {*z};
                Edge e2 = make_edge(s.clique[i], *z);
                if (!g.has_edge(e2.first, e2.second) && oracle.is_legal(e2.first, e2.second)) {
                    return e2;
                }
            }
        }
    }
    for (auto& p : s.paths) {
        if (static_cast<int>(p.size()) >= s.k - 1) continue;
        auto z = g.smallest_isolated();
        if (!z) return fallback();
        Edge e = make_edge(p.back(), *z);
        p.push_back(*z);
        return e;
    }
    return std::nullopt;  // scaffold already complete; caller's stage flip missed
}

/// One funnel move: an isolated vertex (Max's freshly paired one if the last
/// move joined two isolated vertices, else the smallest) onto the
/// minimum-degree path endpoint. Always legal: no cycle is closed.
inline std::optional<Edge> respond_funnel(const ScaffoldState& s, const Graph& g,
                                          Edge max_move, LegalOracle& oracle,
                                          int* target_out = nullptr) {
    int vt = s.endpoint(0);
    for (int j = 1; j < s.ell; ++j) {
        if (g.degree(s.endpoint(j)) < g.degree(vt)) vt = s.endpoint(j);
    }
    if (target_out) *target_out = vt;
    auto iso = g.smallest_isolated();
    if (!iso) return oracle.first_legal();
    auto [a, b] = max_move;
    bool paired = g.degree(a) == 1 && g.degree(b) == 1 && g.has_edge(a, b);
    return make_edge(paired ? a : *iso, vt);
}

namespace detail {

/// Does the induced subgraph on `verts` contain a simple path on
/// `target_vertices` vertices? Exhaustive DFS, budgeted.
inline bool has_path_on_vertices(const Graph& g, const std::vector<int>& verts,
                                 int target_vertices, SearchBudget* budget) {
    if (target_vertices <= 1) return !verts.empty();
    std::vector<char> member(g.n(), 0), used(g.n(), 0);
    for (int w : verts) member[w] = 1;
    std::vector<int> stack;
    auto dfs = [&](auto&& self, int cur, int count) -> bool {
        if (budget) budget->charge();
        if (count >= target_vertices) return true;
        for (int w : g.neighbors(cur)) {
            if (!member[w] || used[w]) continue;
            used[w] = 1;
            if (self(self, w, count + 1)) return true;
            used[w] = 0;
        }
        return false;
    };
    for (int start : verts) {
        used.assign(g.n(), 0);
        used[start] = 1;
        if (dfs(dfs, start, 1)) return true;
    }
    return false;
}

}  // namespace detail

struct ScaffoldReport {
    bool no_long_path = true;     // (i) no path on 2k vertices inside any N(v_j)
    bool no_cross_edges = true;   // (ii) no V_j - V_j' edges off the scaffold
    bool outside_single = true;   // (iii) outside vertices touch at most one V_j
    bool endpoint_floor = true;   // (iv) min degree of the endpoints
    bool cycle_neighbors = true;  // (v) <= 2 neighbors on any recorded C_{2k+1}
    std::string witness;

    bool ok() const {
        return no_long_path && no_cross_edges && outside_single && endpoint_floor &&
               cycle_neighbors;
    }
};

inline ScaffoldReport check_final_structure(const ScaffoldState& s, const Graph& g,
                                            SearchBudget* budget = nullptr) {
    ScaffoldReport r;
    auto note = [&](const std::string& w) {
        if (r.witness.empty()) r.witness = w;
    };
    int n = g.n();
    std::vector<char> in_P(n, 0);
    for (const auto& p : s.paths) {
        for (int w : p) in_P[w] = 1;
    }
    // mask[w]: bit j set when w is a non-scaffold neighbor of endpoint j.
    std::vector<std::uint32_t> mask(n, 0);
    for (int j = 0; j < s.ell; ++j) {
        for (int w : g.neighbors(s.endpoint(j))) {
            if (!in_P[w]) mask[w] |= 1u << j;
        }
    }

    for (int j = 0; j < s.ell; ++j) {
        std::vector<int> vj = g.neighbors(s.endpoint(j));
        if (detail::has_path_on_vertices(g, vj, 2 * s.k, budget)) {
            r.no_long_path = false;
            note("neighborhood of endpoint " + std::to_string(s.endpoint(j)) +
                 " spans a path on " + std::to_string(2 * s.k) + " vertices");
        }
    }

    for (const auto& [a, b] : g.edges()) {
        if (in_P[a] || in_P[b] || !mask[a] || !mask[b]) continue;
        // Legitimate only when both endpoints serve the same single funnel set.
        if (!(mask[a] == mask[b] && (mask[a] & (mask[a] - 1)) == 0)) {
            r.no_cross_edges = false;
            note("edge (" + std::to_string(a) + "," + std::to_string(b) +
                 ") crosses two funnel sets");
        }
    }

    for (int w = 0; w < n; ++w) {
        if (in_P[w] || mask[w]) continue;
        std::uint32_t seen = 0;
        bool bad = false;
        for (int x : g.neighbors(w)) {
            if (in_P[x] || !mask[x]) continue;
            if (seen == 0) {
                seen = mask[x];
            } else if (!(seen == mask[x] && (seen & (seen - 1)) == 0)) {
                bad = true;
            }
        }
        if (bad) {
            r.outside_single = false;
            note("vertex " + std::to_string(w) + " reaches two funnel sets");
        }
    }

    double floor = static_cast<double>(n) / (2.0 * s.ell) - (s.t0 + 2);
    for (int j = 0; j < s.ell; ++j) {
        if (g.degree(s.endpoint(j)) < floor - 1e-9) {
            r.endpoint_floor = false;
            note("endpoint " + std::to_string(s.endpoint(j)) + " has degree " +
                 std::to_string(g.degree(s.endpoint(j))));
        }
    }

    for (const auto& cyc : s.cycles) {
        std::vector<char> on(n, 0);
        for (int w : cyc) on[w] = 1;
        for (int w = 0; w < n; ++w) {
            int cnt = 0;
            for (int x : g.neighbors(w)) cnt += on[x];
            if (cnt > 2) {
                r.cycle_neighbors = false;
                note("vertex " + std::to_string(w) + " has " + std::to_string(cnt) +
                     " neighbors on a recorded cycle");
            }
        }
    }
    return r;
}

/// Mini strategy for the {C_{2k+1}} game: build the clique-plus-paths
/// scaffold by the deadline, then funnel every isolated vertex onto the
/// lightest path endpoint.
class SingleCyclePlayer : public Player {
public:
    std::string name() const override { return "single-cycle-mini"; }

    void begin_game(int, const ForbiddenFamily& f, Side side) override {
        if (side != Side::Mini) throw PreconditionError("single-cycle-mini is a Mini strategy");
        if (f.kind != FamilyKind::Single || f.param < 5 || f.param % 2 == 0) {
            throw PreconditionError("single-cycle-mini plays single=2k+1 games with k >= 2");
        }
        s_ = make_scaffold_state((f.param - 1) / 2);
        last_max_move_ = {0, 0};
        annotation_ = nlohmann::json();
    }

    void observe(const Graph&, Edge e, Side mover) override {
        if (mover == Side::Max) last_max_move_ = e;
    }

    std::optional<Edge> choose(const Graph& g, const ForbiddenFamily&, const GameRecord&, Side,
                               LegalOracle& oracle) override {
        annotation_ = nlohmann::json();
        if (!s_.funneling && scaffold_complete(s_, g)) s_.funneling = true;
        std::optional<Edge> e;
        if (!s_.funneling) {
            e = respond_build(s_, g, oracle);
            annotation_["stage"] = "build";
        } else {
            int vt = -1;
            e = respond_funnel(s_, g, last_max_move_, oracle, &vt);
            annotation_["stage"] = "funnel";
            annotation_["v_t"] = vt;
            auto deg = nlohmann::json::array();
            for (int j = 0; j < s_.ell; ++j) deg.push_back(g.degree(s_.endpoint(j)));
            annotation_["endpoint_degrees"] = std::move(deg);
        }
        return e;
    }

    nlohmann::json annotation() const override { return annotation_; }

    std::map<std::string, bool> forfeit_flags() const override {
        return {{"single_cycle_forfeit", s_.forfeited}};
    }

    const ScaffoldState& state() const { return s_; }

private:
    ScaffoldState s_;
    Edge last_max_move_{0, 0};
    nlohmann::json annotation_;
};

}  // namespace satgame

#endif
