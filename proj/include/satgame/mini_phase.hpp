#ifndef SATGAME_MINI_PHASE_HPP
#define SATGAME_MINI_PHASE_HPP

#include <algorithm>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "satgame/engine.hpp"

namespace satgame {

/// The maintained set of disjoint paths ending at v. A path's off-v component
/// keeps the unique-route-to-v property iff that component plus v induces a
/// tree, which a union-find over G - {v} with edge counters certifies in O(1).
class PathTracker {
public:
    void init(int n, int v, int u) {
        n_ = n;
        v_ = v;
        parent_.resize(n);
        std::iota(parent_.begin(), parent_.end(), 0);
        size_.assign(n, 1);
        internal_.assign(n, 0);
        v_edges_.assign(n, 0);
        v_edges_[u] = 1;
        paths_ = {{u, v}};
    }

    bool initialized() const { return v_ >= 0; }
    int root_vertex() const { return v_; }

    /// True when x's component avoids v and is an isolated vertex or edge.
    bool good_component(const Graph& g, int x) const {
        if (x == v_) return false;
        int d = g.degree(x);
        if (d == 0) return true;
        if (d != 1) return false;
        int w = g.neighbors(x)[0];
        return w != v_ && g.degree(w) == 1;
    }

    /// Folds one just-played edge into the path set (Steps 0-3): create or
    /// extend a path when a good component attaches to v or to a path
    /// endpoint, then drop every path whose component lost tree shape.
    void apply(const Graph& g_before, Edge e) {
        auto [a, b] = e;
        if (a == v_ || b == v_) {
            int x = a == v_ ? b : a;
            if (good_component(g_before, x)) paths_.push_back({x, v_});
        } else {
            for (auto [x, w] : {std::pair{a, b}, std::pair{b, a}}) {
                if (!good_component(g_before, x)) continue;
                auto it = std::find_if(paths_.begin(), paths_.end(),
                                       [w](const std::vector<int>& p) { return p.front() == w; });
                if (it != paths_.end()) {
                    it->insert(it->begin(), x);
                    break;
                }
            }
        }
        add_edge_counters(a, b);
        std::erase_if(paths_, [this](const std::vector<int>& p) {
            int r = find(p.front());
            return internal_[r] + v_edges_[r] != size_[r];
        });
    }

    const std::vector<std::vector<int>>& paths() const { return paths_; }

    /// D_ell: non-v endpoints of length-ell paths, ascending. D_0 = {v}.
    std::vector<int> endpoints_of_length(int ell) const {
        if (ell == 0) return {v_};
        std::vector<int> out;
        for (const auto& p : paths_) {
            if (static_cast<int>(p.size()) == ell + 1) out.push_back(p.front());
        }
        std::sort(out.begin(), out.end());
        return out;
    }

    std::optional<std::vector<int>> path_ending_at(int x) const {
        for (const auto& p : paths_) {
            if (p.front() == x) return p;
        }
        return std::nullopt;
    }

    /// Off-v components of two paths are distinct (the disjointness law).
    bool components_disjoint() const {
        std::vector<int> roots;
        for (const auto& p : paths_) roots.push_back(find(p.front()));
        std::sort(roots.begin(), roots.end());
        return std::adjacent_find(roots.begin(), roots.end()) == roots.end();
    }

private:
    int find(int a) const {
        while (parent_[a] != a) {
            parent_[a] = parent_[parent_[a]];
            a = parent_[a];
        }
        return a;
    }

    void add_edge_counters(int a, int b) {
        if (a == v_ || b == v_) {
            ++v_edges_[find(a == v_ ? b : a)];
            return;
        }
        int ra = find(a), rb = find(b);
        if (ra == rb) {
            ++internal_[ra];
            return;
        }
        if (size_[ra] < size_[rb]) std::swap(ra, rb);
        parent_[rb] = ra;
        size_[ra] += size_[rb];
        internal_[ra] += internal_[rb] + 1;
        v_edges_[ra] += v_edges_[rb];
    }

    int n_ = 0, v_ = -1;
    mutable std::vector<int> parent_;
    std::vector<long long> size_, internal_, v_edges_;
    std::vector<std::vector<int>> paths_;
};

enum class PhaseMoveType { I, O, AU, AV, X };

inline const char* phase_move_name(PhaseMoveType t) {
    switch (t) {
        case PhaseMoveType::I: return "I";
        case PhaseMoveType::O: return "O";
        case PhaseMoveType::AU: return "AU";
        case PhaseMoveType::AV: return "AV";
        case PhaseMoveType::X: return "X";
    }
    return "?";
}

/// Mini's bookkeeping for the odd<=2k-1 game: the approximate bipartition
/// (U, V), the phase counter, and the endgame artifacts.
struct MiniPhaseState {
    int k = 5;
    double c = 0.0;  // balance constant, default (1000 k^2)^-1
    int u = -1, v = -1;
    std::vector<char> in_U, in_V;
    int phase = 0;
    int pre_minus1_phase = 0;    // phase held when -1 was entered
    int t_phase_entry = 0;       // move index at current phase entry
    int d_k_at_entry = -1;       // |D_k| when phase k was entered
    std::vector<std::vector<int>> cycles;  // C_{2k+1}s closed in phase k
    bool started = false;

    bool tracked(int w) const { return in_U[w] || in_V[w]; }
};

inline MiniPhaseState make_mini_phase_state(int n, int k, double c = 0.0) {
    if (k < 2) throw PreconditionError("phase strategy requires k >= 2");
    MiniPhaseState s;
    s.k = k;
    s.c = c > 0.0 ? c : 1.0 / (1000.0 * k * k);
    s.in_U.assign(n, 0);
    s.in_V.assign(n, 0);
    return s;
}

/// Membership growth rule: when a tracked vertex x reaches an isolated vertex
/// y, y joins the side opposite x; when it reaches an isolated edge yz, y
/// joins the opposite side and z joins x's side. Anything else changes nothing.
inline void note_membership(MiniPhaseState& s, const Graph& g_before, Edge e) {
    int x, y;
    if (s.tracked(e.first) && !s.tracked(e.second)) {
        x = e.first;
        y = e.second;
    } else if (s.tracked(e.second) && !s.tracked(e.first)) {
        x = e.second;
        y = e.first;
    } else {
        return;
    }
    auto& same = s.in_V[x] ? s.in_V : s.in_U;
    auto& opposite = s.in_V[x] ? s.in_U : s.in_V;
    int dy = g_before.degree(y);
    if (dy == 0) {
        opposite[y] = 1;
    } else if (dy == 1) {
        int z = g_before.neighbors(y)[0];
        if (z != s.v && g_before.degree(z) == 1) {
            opposite[y] = 1;
            same[z] = 1;
        }
    }
}

inline PhaseMoveType classify_phase_move(const MiniPhaseState& s, const Graph& g_before,
                                         Edge e) {
    auto [a, b] = e;
    bool ta = s.tracked(a), tb = s.tracked(b);
    bool ia = g_before.degree(a) == 0, ib = g_before.degree(b) == 0;
    if (ta && tb) return PhaseMoveType::I;
    if (ia && ib) return PhaseMoveType::O;
    if ((ia && tb) || (ib && ta)) {
        int anchor = ta ? a : b;
        return s.in_V[anchor] ? PhaseMoveType::AU : PhaseMoveType::AV;
    }
    return PhaseMoveType::X;
}

namespace detail {

/// BFS from v along U-V crossing edges only; -1 where unreachable.
inline std::vector<int> alternating_distances(const MiniPhaseState& s, const Graph& g) {
    std::vector<int> dist(g.n(), -1);
    std::vector<int> queue;
    dist[s.v] = 0;
    queue.push_back(s.v);
    for (size_t head = 0; head < queue.size(); ++head) {
        int cur = queue[head];
        for (int w : g.neighbors(cur)) {
            bool cross = (s.in_U[cur] && s.in_V[w]) || (s.in_V[cur] && s.in_U[w]);
            if (!cross || dist[w] >= 0) continue;
            dist[w] = dist[cur] + 1;
            queue.push_back(w);
        }
    }
    return dist;
}

}  // namespace detail

inline std::optional<int> d_alternating(const MiniPhaseState& s, const Graph& g, int x) {
    if (!s.tracked(x)) {
        throw PreconditionError("alternating distance queried outside U and V");
    }
    int d = detail::alternating_distances(s, g)[x];
    return d >= 0 ? std::optional<int>(d) : std::nullopt;
}

/// Phase transition rules, evaluated at even move counts on G^t.
inline int advance_phase(MiniPhaseState& s, const Graph& g, const PathTracker& pt) {
    if (s.phase == -1 || s.phase == s.k) return s.phase;
    int n = g.n();
    int i = g.isolated_count();
    long long nu = std::count(s.in_U.begin(), s.in_U.end(), 1);
    long long nv = std::count(s.in_V.begin(), s.in_V.end(), 1);
    double balance = static_cast<double>(nu > nv ? nu - nv : nv - nu);
    double cn = s.c * n;
    static constexpr double kEps = 1e-9;
    auto enter = [&](int next) {
        if (next == -1) s.pre_minus1_phase = s.phase;
        s.phase = next;
        s.t_phase_entry = static_cast<int>(g.edge_count());
        if (next == s.k) {
            s.d_k_at_entry = static_cast<int>(pt.endpoints_of_length(s.k).size());
        }
        return s.phase;
    };

    if (balance >= cn - kEps) return enter(-1);
    int ell = s.phase;
    auto d_next = pt.endpoints_of_length(ell + 1);
    if (ell == 0) {
        bool up = static_cast<double>(d_next.size()) >= (1.0 / 9.0 + 9.0 * s.c) * n - kEps &&
                  pt.endpoints_of_length(2).empty() && i >= 0.5 * n - kEps &&
                  i <= (0.5 + 4.0 * s.c) * n + kEps;
        if (up) return enter(1);
    } else if (ell == 1) {
        bool up = static_cast<double>(d_next.size()) >= n / 9.0 - kEps &&
                  i >= (5.0 / 18.0 - 9.0 * s.c) * n - kEps;
        if (up) return enter(2);
    } else {
        double d_need = (9.0 * (s.k - ell - 1) + 4.0) * cn;
        double iso_need = 0.0;
        for (int j = ell + 1; j <= s.k; ++j) iso_need += 27.0 * (s.k - j);
        iso_need = (8.0 * (s.k - ell - 1) + iso_need) * cn;
        if (static_cast<double>(d_next.size()) >= d_need - kEps && i >= iso_need - kEps) {
            return enter(ell + 1);
        }
    }
    return s.phase;
}

struct SSResponse {
    std::optional<Edge> edge;
    bool forfeited = false;
    std::string reason;
};

/// One move of SS-Strat for phase ell in {0,...,k-1}. Even ell as written,
/// odd ell with the U/V roles mirrored (skip target u instead of v). When
/// substitute_root is set (phase -1 variant), an empty D_ell substitutes the
/// root for y instead of forfeiting.
inline SSResponse respond_ssstrat(MiniPhaseState& s, const PathTracker& pt, const Graph& g,
                                  Edge max_move, PhaseMoveType type, LegalOracle& oracle,
                                  int ell, bool substitute_root = false) {
    bool even = ell % 2 == 0;
    int skip_target = even ? s.v : s.u;
    auto forfeit = [&](const std::string& why) {
        return SSResponse{oracle.first_legal(), !substitute_root, why};
    };
    if (type == PhaseMoveType::X) return forfeit("X move");
    auto iso = g.smallest_isolated();
    if (!iso) return forfeit("no isolated vertex");
    int z = *iso;
    std::vector<int> d_ell = pt.endpoints_of_length(ell);
    int y;
    if (!d_ell.empty()) {
        y = d_ell.front();
    } else if (substitute_root) {
        y = skip_target;
    } else {
        return forfeit("D_ell empty");
    }

    PhaseMoveType problem = even ? PhaseMoveType::AU : PhaseMoveType::AV;
    if (type != problem) {
        if (type == PhaseMoveType::O) return {make_edge(max_move.first, y)};
        return {make_edge(y, z)};  // I and the benign attach move
    }

    // Both endpoints are tracked by now (the fresh one joined the opposite
    // side), so the anchor is the endpoint on the attached-to side.
    const auto& anchor_side = even ? s.in_V : s.in_U;
    int attach = anchor_side[max_move.first] ? max_move.first : max_move.second;
    int fresh = attach == max_move.first ? max_move.second : max_move.first;
    std::vector<int> dalt = detail::alternating_distances(s, g);
    if (dalt[attach] >= 0 && dalt[attach] <= ell) return {make_edge(z, skip_target)};
    if (dalt[attach] < 0) return forfeit("attachment vertex has no alternating path");
    // Reroute: two steps along the lexicographically smallest shortest
    // alternating path from the attachment point toward v.
    int cur = attach;
    for (int step = 0; step < 2; ++step) {
        int next = -1;
        for (int w : g.neighbors(cur)) {
            bool cross = (s.in_U[cur] && s.in_V[w]) || (s.in_V[cur] && s.in_U[w]);
            if (cross && dalt[w] == dalt[cur] - 1) {
                next = w;
                break;  // neighbors ascending, first hit is smallest
            }
        }
        if (next < 0) return forfeit("alternating path walk failed");
        cur = next;
    }
    Edge e = make_edge(fresh, cur);
    if (!oracle.is_legal(e.first, e.second)) return forfeit("reroute edge illegal");
    return {e};
}

/// Phase k: close a C_{2k+1} through v by joining the two smallest D_k
/// endpoints; the cycle is recorded on the state.
inline std::optional<Edge> endgame_phase_k(MiniPhaseState& s, const PathTracker& pt,
                                           LegalOracle& oracle) {
    std::vector<int> dk = pt.endpoints_of_length(s.k);
    if (dk.size() < 2) return oracle.first_legal();
    int w1 = dk[0], w2 = dk[1];
    Edge e = make_edge(w1, w2);
    if (!oracle.is_legal(e.first, e.second)) {
        throw StrategyError("joining two depth-k endpoints was illegal; path invariants broken");
    }
    auto p1 = pt.path_ending_at(w1).value();
    auto p2 = pt.path_ending_at(w2).value();
    std::vector<int> cycle = p1;                       // w1 ... v
    cycle.insert(cycle.end(), p2.rbegin() + 1, p2.rend());  // ... back to w2
    s.cycles.push_back(std::move(cycle));
    return e;
}

/// Phase -1: arbitrary when the whole graph is connected, otherwise SS-Strat
/// at the pre-transition parameter with the root substituted for a missing y.
inline std::optional<Edge> endgame_phase_minus1(MiniPhaseState& s, const PathTracker& pt,
                                                const Graph& g, Edge max_move,
                                                PhaseMoveType type, LegalOracle& oracle) {
    if (g.component_count() == 1) return oracle.first_legal();
    SSResponse r = respond_ssstrat(s, pt, g, max_move, type, oracle, s.pre_minus1_phase, true);
    return r.edge;
}

struct NiceReport {
    bool single_component = false;  // (1-ell)
    bool distances = false;         // (2-ell)
    bool counts = false;            // (3-ell)
    int isolated = 0;
    std::string witness;

    bool ok() const { return single_component && distances && counts; }
};

inline NiceReport check_ell_nice(const MiniPhaseState& s, const PathTracker& pt,
                                 const Graph& g, int ell) {
    NiceReport r;
    r.isolated = g.isolated_count();
    auto note = [&](const std::string& w) {
        if (r.witness.empty()) r.witness = w;
    };

    r.single_component = true;
    for (int w = 0; w < g.n(); ++w) {
        bool nontrivial = g.degree(w) > 0;
        if (nontrivial != s.tracked(w)) {
            r.single_component = false;
            note("vertex " + std::to_string(w) +
                 (nontrivial ? " outside U and V" : " tracked but isolated"));
        }
        if (nontrivial && !g.same_component(w, s.v)) {
            r.single_component = false;
            note("second nontrivial component at " + std::to_string(w));
        }
    }

    std::vector<int> dalt = detail::alternating_distances(s, g);
    r.distances = true;
    for (int w = 0; w < g.n(); ++w) {
        if (!s.tracked(w)) continue;
        if (dalt[w] < 0 || dalt[w] > ell + 2) {
            r.distances = false;
            note("vertex " + std::to_string(w) + " at alternating distance " +
                 std::to_string(dalt[w]));
        }
    }

    int d_ell = static_cast<int>(pt.endpoints_of_length(ell).size());
    r.counts = r.isolated >= 3 && (ell == 0 || d_ell >= 3);
    if (!r.counts) {
        note("i=" + std::to_string(r.isolated) + " |D_ell|=" + std::to_string(d_ell));
    }
    return r;
}

/// Mini strategy for the odd<=2k-1 game: grow v-rooted paths through phases
/// 0..k-1, then either harvest C_{2k+1}s (phase k) or ride the bipartition
/// imbalance (phase -1).
class MiniPhasePlayer : public Player {
public:
    explicit MiniPhasePlayer(double c = 0.0) : c_(c) {}

    std::string name() const override { return "phase-mini"; }

    void begin_game(int n, const ForbiddenFamily& f, Side side) override {
        if (side != Side::Mini) throw PreconditionError("phase-mini is a Mini strategy");
        if (f.kind != FamilyKind::OddUpTo || f.param < 1) {
            throw PreconditionError("phase-mini plays odd<=2k-1 games");
        }
        s_ = make_mini_phase_state(n, f.param + 1, c_);
        pt_ = PathTracker{};
        last_type_ = PhaseMoveType::X;
        last_max_move_ = {0, 0};
        forfeited_ = false;
        annotation_ = nlohmann::json();
    }

    void observe(const Graph& g_before, Edge e, Side mover) override {
        if (!s_.started) {
            s_.v = e.first;
            s_.u = e.second;
            s_.in_V[s_.v] = 1;
            pt_.init(g_before.n(), s_.v, s_.u);
            note_membership(s_, g_before, e);
            s_.started = true;
            last_type_ = classify_phase_move_first();
            last_max_move_ = e;
            return;
        }
        if (mover == Side::Max) {
            last_type_ = classify_phase_move(s_, g_before, e);
            last_max_move_ = e;
        }
        note_membership(s_, g_before, e);
        pt_.apply(g_before, e);
        if (mover == Side::Mini) {
            Graph after = g_before;
            after.add_edge(e.first, e.second);
            advance_phase(s_, after, pt_);
        }
    }

    std::optional<Edge> choose(const Graph& g, const ForbiddenFamily&, const GameRecord&, Side,
                               LegalOracle& oracle) override {
        annotation_ = nlohmann::json();
        if (!s_.started) throw PreconditionError("phase-mini requires moving second");
        std::optional<Edge> e;
        bool forfeit_now = false;
        if (s_.phase == s_.k) {
            e = endgame_phase_k(s_, pt_, oracle);
        } else if (s_.phase == -1) {
            e = endgame_phase_minus1(s_, pt_, g, last_max_move_, last_type_, oracle);
        } else {
            SSResponse r = respond_ssstrat(s_, pt_, g, last_max_move_, last_type_, oracle,
                                           s_.phase);
            e = r.edge;
            forfeit_now = r.forfeited;
            if (r.forfeited) forfeited_ = true;
        }
        annotation_["phase"] = s_.phase;
        annotation_["move_type"] = phase_move_name(last_type_);
        annotation_["forfeit"] = forfeit_now;
        long long nu = std::count(s_.in_U.begin(), s_.in_U.end(), 1);
        long long nv = std::count(s_.in_V.begin(), s_.in_V.end(), 1);
        int ell_eff = s_.phase >= 0 && s_.phase < s_.k ? s_.phase
                      : s_.phase == -1               ? s_.pre_minus1_phase
                                                      : s_.k - 1;
        annotation_["g_balance"] = ell_eff % 2 == 0 ? nv - nu : nu - nv;
        auto d = nlohmann::json::array();
        for (int ell = 1; ell <= s_.k; ++ell) {
            d.push_back(pt_.endpoints_of_length(ell).size());
        }
        annotation_["d_sizes"] = std::move(d);
        return e;
    }

    nlohmann::json annotation() const override { return annotation_; }

    std::map<std::string, bool> forfeit_flags() const override {
        return {{"mini_phase_forfeit", forfeited_}};
    }

    const MiniPhaseState& state() const { return s_; }
    const PathTracker& tracker() const { return pt_; }
    PhaseMoveType last_move_type() const { return last_type_; }
    Edge last_max_move() const { return last_max_move_; }

private:
    static PhaseMoveType classify_phase_move_first() {
        // e^1 = uv attaches an isolated u to v in V^0.
        return PhaseMoveType::AU;
    }

    double c_;
    MiniPhaseState s_;
    PathTracker pt_;
    PhaseMoveType last_type_ = PhaseMoveType::X;
    Edge last_max_move_{0, 0};
    bool forfeited_ = false;
    nlohmann::json annotation_;
};

}  // namespace satgame

#endif
