#ifndef SATGAME_MAX_GOODNESS_HPP
#define SATGAME_MAX_GOODNESS_HPP

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "satgame/engine.hpp"

namespace satgame {

/// Balance ratio for the representative strategy: the positive root of
/// -x^2 + 4x/k + 1, which tends to 1 as k grows.
inline double gamma_k(int k) {
    if (k < 3) throw PreconditionError("gamma_k requires k >= 3");
    double r = 4.0 / k;
    return (r + std::sqrt(r * r + 4.0)) / 2.0;
}

enum class MoveType { I, O, AU, AV };
enum class GoodState { N, OU, OV, C };

inline const char* move_type_name(MoveType t) {
    switch (t) {
        case MoveType::I: return "I";
        case MoveType::O: return "O";
        case MoveType::AU: return "AU";
        case MoveType::AV: return "AV";
    }
    return "?";
}

inline const char* good_state_name(GoodState s) {
    switch (s) {
        case GoodState::N: return "N";
        case GoodState::OU: return "OU";
        case GoodState::OV: return "OV";
        case GoodState::C: return "C";
    }
    return "?";
}

/// Max's bookkeeping for keeping the lone nontrivial component bipartite and
/// balanced. u and v are the endpoints of Max's first edge; in_U/in_V record
/// which side each touched vertex landed on.
struct MaxGoodState {
    bool representative = false;
    int k = 2;
    double gamma = 1.5;
    double delta = 2.0;
    int ell = 0;  // representative mode: even radius, k or k+1
    int u = -1, v = -1;
    std::vector<char> in_U, in_V;
    bool started = false;
};

inline MaxGoodState make_basic_state(int n, int k) {
    if (k < 2) throw PreconditionError("basic mode requires k >= 2");
    MaxGoodState s;
    s.k = k;
    s.in_U.assign(n, 0);
    s.in_V.assign(n, 0);
    return s;
}

inline MaxGoodState make_representative_state(int n, int k) {
    if (k < 3) throw PreconditionError("representative mode requires k >= 3");
    MaxGoodState s;
    s.representative = true;
    s.k = k;
    s.gamma = gamma_k(k);
    s.delta = 1.0 / (s.gamma - 1.0);
    s.ell = k % 2 == 0 ? k : k + 1;
    s.in_U.assign(n, 0);
    s.in_V.assign(n, 0);
    return s;
}

namespace detail {

/// Minimal vertex at distance 4 from the root lying on a shortest path from x
/// to the root. dist_root is a precomputed BFS table from the root. Distance
/// exactly ell is the steady state; a just-attached vertex can sit farther out
/// for the one move before Max repairs it.
inline int representative_from(const Graph& g, const std::vector<int>& dist_root, int x,
                               int ell) {
    if (dist_root[x] < ell) {
        throw PreconditionError("representative requested for vertex " + std::to_string(x) +
                                " at distance " + std::to_string(dist_root[x]) +
                                ", expected >= " + std::to_string(ell));
    }
    std::vector<int> dx = g.distances_from(x);
    for (int z = 0; z < g.n(); ++z) {
        if (dist_root[z] == 4 && dx[z] >= 0 && dx[z] + 4 == dist_root[x]) return z;
    }
    throw PreconditionError("no representative exists for vertex " + std::to_string(x));
}

}  // namespace detail

inline int find_representative(const MaxGoodState& s, const Graph& g, int x) {
    if (!s.representative) throw PreconditionError("representatives exist in representative mode only");
    return detail::representative_from(g, g.distances_from(s.u), x, s.ell);
}

/// Snapshot of the derived partitions. Basic mode: U0 = N(v), U1 = U \ U0 and
/// tilde_U1 aliases U1. Representative mode: U0 = vertices of U closer than
/// ell to u, tilde_U1 the rest (all at distance exactly ell while the
/// invariants hold), U1 their set of representatives. All ascending.
struct GoodnessSets {
    std::vector<int> U, V, U0, U1, V0, V1, tilde_U1, tilde_V1;
    double b_U = 0.0, b_V = 0.0;
};

inline GoodnessSets compute_goodness_sets(const MaxGoodState& s, const Graph& g) {
    GoodnessSets out;
    for (int w = 0; w < g.n(); ++w) {
        if (s.in_U[w]) out.U.push_back(w);
        if (s.in_V[w]) out.V.push_back(w);
    }
    if (!s.representative) {
        for (int x : out.U) (g.has_edge(x, s.v) ? out.U0 : out.U1).push_back(x);
        for (int y : out.V) (g.has_edge(y, s.u) ? out.V0 : out.V1).push_back(y);
        out.tilde_U1 = out.U1;
        out.tilde_V1 = out.V1;
    } else {
        std::vector<int> du = g.distances_from(s.u);
        std::vector<int> dv = g.distances_from(s.v);
        for (int x : out.U) {
            (du[x] >= 0 && du[x] < s.ell ? out.U0 : out.tilde_U1).push_back(x);
        }
        for (int y : out.V) {
            (dv[y] >= 0 && dv[y] < s.ell ? out.V0 : out.tilde_V1).push_back(y);
        }
        for (int x : out.tilde_U1) out.U1.push_back(detail::representative_from(g, du, x, s.ell));
        for (int y : out.tilde_V1) out.V1.push_back(detail::representative_from(g, dv, y, s.ell));
        for (auto* reps : {&out.U1, &out.V1}) {
            std::sort(reps->begin(), reps->end());
            reps->erase(std::unique(reps->begin(), reps->end()), reps->end());
        }
    }
    double nu = static_cast<double>(out.U.size());
    double nv = static_cast<double>(out.V.size());
    out.b_U = static_cast<double>(out.V1.size()) + (nu - s.gamma * nv - s.delta);
    out.b_V = static_cast<double>(out.U1.size()) + (nv - s.gamma * nu - s.delta);
    return out;
}

/// Opponent move classification relative to the tracked sides. An edge inside
/// U or inside V contradicts the bipartiteness invariant and aborts hard.
inline MoveType classify_move(const MaxGoodState& s, const Graph&, Edge e) {
    auto side = [&](int w) { return s.in_U[w] ? 'U' : s.in_V[w] ? 'V' : '.'; };
    char a = side(e.first), b = side(e.second);
    if (a == b && a != '.') {
        throw StrategyError(std::string("impossible move inside ") + a + ": (" +
                            std::to_string(e.first) + "," + std::to_string(e.second) + ")");
    }
    if (a != '.' && b != '.') return MoveType::I;
    if (a == '.' && b == '.') return MoveType::O;
    return a == 'V' || b == 'V' ? MoveType::AU : MoveType::AV;
}

/// State detection after an AU/AV move (the fresh endpoint already recorded).
inline GoodState detect_state(const MaxGoodState& s, const Graph& g) {
    static constexpr double kEps = 1e-9;
    GoodnessSets sets = compute_goodness_sets(s, g);
    double nu = static_cast<double>(sets.U.size());
    double nv = static_cast<double>(sets.V.size());
    if (nu > s.gamma * nv + s.delta + kEps) return GoodState::OU;
    if (nv > s.gamma * nu + s.delta + kEps) return GoodState::OV;
    if (sets.tilde_U1.empty() && sets.tilde_V1.empty()) return GoodState::N;
    return GoodState::C;
}

struct GoodnessReport {
    bool component_ok = false;  // (1*) one nontrivial component, bipartite as (U,V)
    bool cover_ok = false;      // (2*) everyone has a neighbor in U0 or V0
    bool balance_ok = false;    // (3*) b_U <= 0 and b_V <= 0
    bool sum_ok = false;        // (4*) b_U + b_V <= -2
    double b_U = 0.0, b_V = 0.0;
    std::string witness;

    bool ok() const { return component_ok && cover_ok && balance_ok && sum_ok; }
};

inline GoodnessReport check_gamma_good(const MaxGoodState& s, const Graph& g) {
    static constexpr double kEps = 1e-9;
    GoodnessReport r;
    GoodnessSets sets = compute_goodness_sets(s, g);
    r.b_U = sets.b_U;
    r.b_V = sets.b_V;
    auto note = [&](const std::string& w) {
        if (r.witness.empty()) r.witness = w;
    };

    r.component_ok = true;
    for (int w = 0; w < g.n(); ++w) {
        bool tracked = s.in_U[w] || s.in_V[w];
        if (s.in_U[w] && s.in_V[w]) {
            r.component_ok = false;
            note("vertex " + std::to_string(w) + " on both sides");
        }
        if (tracked != (g.degree(w) > 0)) {
            r.component_ok = false;
            note("vertex " + std::to_string(w) + (tracked ? " tracked but isolated" : " untracked"));
        }
        if (tracked && !g.same_component(w, s.u)) {
            r.component_ok = false;
            note("second nontrivial component at vertex " + std::to_string(w));
        }
    }
    for (const auto& [x, y] : g.edges()) {
        bool crosses = (s.in_U[x] && s.in_V[y]) || (s.in_V[x] && s.in_U[y]);
        if (!crosses) {
            r.component_ok = false;
            note("edge (" + std::to_string(x) + "," + std::to_string(y) + ") does not cross sides");
        }
    }

    std::vector<char> good(g.n(), 0);
    for (int x : sets.U0) good[x] = 1;
    for (int y : sets.V0) good[y] = 1;
    r.cover_ok = true;
    for (int w = 0; w < g.n(); ++w) {
        if (!s.in_U[w] && !s.in_V[w]) continue;
        bool covered = false;
        for (int z : g.neighbors(w)) {
            if (good[z]) {
                covered = true;
                break;
            }
        }
        if (!covered) {
            r.cover_ok = false;
            note("vertex " + std::to_string(w) + " has no good neighbor");
        }
    }

    r.balance_ok = r.b_U <= kEps && r.b_V <= kEps;
    if (!r.balance_ok) {
        note("b_U=" + std::to_string(r.b_U) + " b_V=" + std::to_string(r.b_V));
    }
    r.sum_ok = r.b_U + r.b_V <= -2.0 + kEps;
    if (!r.sum_ok) note("b_U+b_V=" + std::to_string(r.b_U + r.b_V));
    return r;
}

/// Max's reply to the opponent's move when the position still has an isolated
/// vertex. Updates side membership for both moves. Every move this strategy
/// produces is a cross edge or an absorption, so an oracle rejection means the
/// invariants were already broken and we abort hard.
inline Edge respond(MaxGoodState& s, const Graph& g, Edge opp, LegalOracle& oracle,
                    std::optional<GoodState>* state_out = nullptr,
                    MoveType* type_out = nullptr) {
    MoveType mt = classify_move(s, g, opp);
    if (type_out) *type_out = mt;
    if (state_out) state_out->reset();
    auto play = [&](int a, int b) -> Edge {
        Edge e = make_edge(a, b);
        if (!oracle.is_legal(e.first, e.second)) {
            throw StrategyError("goodness move (" + std::to_string(e.first) + "," +
                                std::to_string(e.second) + ") illegal; invariants broken");
        }
        return e;
    };
    auto absorb = [&](int z, int root) -> Edge {
        (root == s.v ? s.in_U : s.in_V)[z] = 1;
        return play(z, root);
    };

    switch (mt) {
        case MoveType::I: {
            std::optional<Edge> missing;
            for (int x = 0; x < g.n(); ++x) {
                if (!s.in_U[x]) continue;
                for (int y = 0; y < g.n(); ++y) {
                    if (!s.in_V[y] || g.has_edge(x, y)) continue;
                    Edge c = make_edge(x, y);
                    if (!missing || c < *missing) missing = c;
                }
            }
            if (missing) return play(missing->first, missing->second);
            // Complete bipartite: absorb toward the smaller side.
            int z = g.smallest_isolated().value();
            long long nu = std::count(s.in_U.begin(), s.in_U.end(), 1);
            long long nv = std::count(s.in_V.begin(), s.in_V.end(), 1);
            return nu <= nv ? absorb(z, s.v) : absorb(z, s.u);
        }
        case MoveType::O: {
            GoodnessSets sets = compute_goodness_sets(s, g);
            auto [x, y] = opp;
            if (sets.b_U <= -1.0 + 1e-9) {
                s.in_U[x] = 1;
                s.in_V[y] = 1;
                return play(x, s.v);
            }
            s.in_V[x] = 1;
            s.in_U[y] = 1;
            return play(x, s.u);
        }
        case MoveType::AU:
        case MoveType::AV: {
            bool au = mt == MoveType::AU;
            const auto& old_side = au ? s.in_V : s.in_U;
            int old_end = old_side[opp.first] ? opp.first : opp.second;
            int fresh = old_end == opp.first ? opp.second : opp.first;
            (au ? s.in_U : s.in_V)[fresh] = 1;
            GoodState st = detect_state(s, g);
            if (state_out) *state_out = st;
            if ((au && st == GoodState::OV) || (!au && st == GoodState::OU)) {
                throw StrategyError("overflow on the side the opponent did not grow");
            }
            if (st != GoodState::C) {
                int z = g.smallest_isolated().value();
                return au ? absorb(z, s.u) : absorb(z, s.v);
            }
            GoodnessSets sets = compute_goodness_sets(s, g);
            // Fix a bad vertex on old_end's side toward the opposite root,
            // preferring old_end itself so the fresh vertex gains a good
            // neighbor; if that side is clean, fix one on the other side.
            const auto& near_tilde = au ? sets.tilde_V1 : sets.tilde_U1;
            const auto& near_reps = au ? sets.V1 : sets.U1;
            const auto& far_reps = au ? sets.U1 : sets.V1;
            int near_root = au ? s.u : s.v;  // opposite root for old_end's side
            int far_root = au ? s.v : s.u;
            if (!near_tilde.empty()) {
                int target;
                if (std::binary_search(near_tilde.begin(), near_tilde.end(), old_end)) {
                    target = s.representative
                                 ? detail::representative_from(
                                       g, g.distances_from(au ? s.v : s.u), old_end, s.ell)
                                 : old_end;
                } else {
                    target = near_reps.front();
                }
                return play(target, near_root);
            }
            return play(far_reps.front(), far_root);
        }
    }
    throw StrategyError("unreachable move type");
}

/// Once no isolated vertex remains: give a vertex missing both root edges one
/// of them if legal. Absent when nothing needs (or admits) fixing.
inline std::optional<Edge> endgame_fixup(const MaxGoodState& s, const Graph& g,
                                         LegalOracle& oracle) {
    for (int x = 0; x < g.n(); ++x) {
        if (x == s.u || x == s.v || g.degree(x) == 0) continue;
        if (g.has_edge(x, s.u) || g.has_edge(x, s.v)) continue;
        if (oracle.is_legal(std::min(x, s.u), std::max(x, s.u))) return make_edge(x, s.u);
        if (oracle.is_legal(std::min(x, s.v), std::max(x, s.v))) return make_edge(x, s.v);
    }
    return std::nullopt;
}

/// Max strategy for the odd<=2k+1 game. Basic mode holds the sides within a
/// 3/2 ratio; representative mode (k >= 3) tightens the ratio to gamma_k by
/// repairing far vertices through distance-4 representatives.
class MaxGoodPlayer : public Player {
public:
    explicit MaxGoodPlayer(bool representative = false) : rep_(representative) {}

    std::string name() const override { return rep_ ? "gamma-good-rep" : "gamma-good"; }

    void begin_game(int n, const ForbiddenFamily& f, Side side) override {
        if (side != Side::Max) throw PreconditionError("gamma-good is a Max strategy");
        if (f.kind != FamilyKind::OddUpTo || f.param < 2) {
            throw PreconditionError("gamma-good plays odd<=2k+1 games with k >= 2");
        }
        s_ = rep_ ? make_representative_state(n, f.param) : make_basic_state(n, f.param);
        endgame_ = false;
        annotation_ = nlohmann::json();
    }

    std::optional<Edge> choose(const Graph& g, const ForbiddenFamily&, const GameRecord& record,
                               Side, LegalOracle& oracle) override {
        annotation_ = nlohmann::json();
        if (g.edge_count() == 0) {
            if (g.n() < 2) return std::nullopt;
            s_.u = 0;
            s_.v = 1;
            s_.in_U[0] = 1;
            s_.in_V[1] = 1;
            s_.started = true;
            annotation_["move_type"] = "first";
            return make_edge(0, 1);
        }
        if (!s_.started) {
            throw PreconditionError("gamma-good requires making the first move of the game");
        }
        if (!endgame_ && g.smallest_isolated()) {
            std::optional<GoodState> st;
            MoveType mt = MoveType::I;
            Edge e = respond(s_, g, record.moves.back().edge, oracle, &st, &mt);
            annotation_["move_type"] = move_type_name(mt);
            if (st) annotation_["state"] = good_state_name(*st);
            Graph after = g;
            after.add_edge(e.first, e.second);
            GoodnessSets sets = compute_goodness_sets(s_, after);
            annotation_["b_U"] = sets.b_U;
            annotation_["b_V"] = sets.b_V;
            return e;
        }
        endgame_ = true;
        if (auto e = endgame_fixup(s_, g, oracle)) {
            annotation_["move_type"] = "fixup";
            return e;
        }
        annotation_["move_type"] = "fill";
        return oracle.first_legal();
    }

    nlohmann::json annotation() const override { return annotation_; }

    const MaxGoodState& state() const { return s_; }
    bool in_endgame() const { return endgame_; }

private:
    bool rep_ = false;
    MaxGoodState s_;
    bool endgame_ = false;
    nlohmann::json annotation_;
};

}  // namespace satgame

#endif
