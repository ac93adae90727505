#ifndef SATGAME_ENGINE_HPP
#define SATGAME_ENGINE_HPP

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "satgame/family.hpp"
#include "satgame/graph.hpp"
#include "satgame/legality.hpp"

namespace satgame {

enum class Side { Max, Mini };

inline Side other_side(Side s) { return s == Side::Max ? Side::Mini : Side::Max; }
inline const char* side_name(Side s) { return s == Side::Max ? "max" : "mini"; }

inline std::optional<Side> parse_side(const std::string& text) {
    if (text == "max") return Side::Max;
    if (text == "mini") return Side::Mini;
    return std::nullopt;
}

/// Legality oracle shared by the engine and both players within one game.
/// Remembers proven-illegal pairs (illegality is monotone under edge
/// additions); legal answers are always recomputed fresh.
class LegalOracle {
public:
    LegalOracle(const Graph& g, const ForbiddenFamily& f)
        : g_(&g), f_(f), state_(static_cast<size_t>(g.n()) * g.n(), kUnknown) {
        for (const auto& [x, y] : g.edges()) state_[index(x, y)] = kPresent;
    }

    const Graph& graph() const { return *g_; }

    /// Engine calls this after every applied move.
    void note_edge_added(int x, int y) { state_[index(x, y)] = kPresent; }

    bool known_gone(int x, int y) const { return state_[index(x, y)] != kUnknown; }

    /// Precondition: edge absent.
    bool is_legal(int x, int y) {
        auto idx = index(x, y);
        if (state_[idx] == kIllegal) return false;
        if (creates_forbidden(*g_, f_, x, y)) {
            state_[idx] = kIllegal;
            return false;
        }
        return true;
    }

    std::optional<Edge> first_legal() {
        for (int x = 0; x < g_->n(); ++x) {
            for (int y = x + 1; y < g_->n(); ++y) {
                if (!known_gone(x, y) && is_legal(x, y)) return Edge{x, y};
            }
        }
        return std::nullopt;
    }

private:
    static constexpr char kUnknown = 0;
    static constexpr char kIllegal = 1;
    static constexpr char kPresent = 2;

    size_t index(int x, int y) const {
        if (x > y) std::swap(x, y);
        return static_cast<size_t>(x) * g_->n() + y;
    }

    const Graph* g_;
    ForbiddenFamily f_;
    std::vector<char> state_;
};

struct MoveRecord {
    int t = 0;  // 1-based; equals the edge count after the move
    Edge edge{0, 0};
    Side mover = Side::Max;
    nlohmann::json annotation;
};

struct GameRecord {
    ForbiddenFamily family = ForbiddenFamily::all_odd();
    int n = 0;
    Side first_mover = Side::Max;
    std::vector<MoveRecord> moves;
    long long final_edge_count = 0;
    std::map<std::string, bool> forfeits;
    bool aborted = false;
    std::string abort_reason;

    nlohmann::json to_json() const {
        nlohmann::json j;
        j["family"] = family.to_string();
        j["n"] = n;
        j["first_mover"] = side_name(first_mover);
        j["moves"] = nlohmann::json::array();
        for (const auto& m : moves) {
            nlohmann::json jm;
            jm["t"] = m.t;
            jm["edge"] = {m.edge.first, m.edge.second};
            jm["mover"] = side_name(m.mover);
            if (!m.annotation.is_null() && !m.annotation.empty()) jm["annotation"] = m.annotation;
            j["moves"].push_back(std::move(jm));
        }
        j["final_edge_count"] = final_edge_count;
        j["forfeits"] = forfeits;
        if (aborted) {
            j["aborted"] = true;
            j["abort_reason"] = abort_reason;
        }
        return j;
    }

    static GameRecord from_json(const nlohmann::json& j) {
        GameRecord rec;
        auto fam = ForbiddenFamily::parse(j.at("family").get<std::string>());
        if (!fam) throw PreconditionError("bad family in record");
        rec.family = *fam;
        rec.n = j.at("n").get<int>();
        auto fm = parse_side(j.at("first_mover").get<std::string>());
        if (!fm) throw PreconditionError("bad first_mover in record");
        rec.first_mover = *fm;
        for (const auto& jm : j.at("moves")) {
            MoveRecord m;
            m.t = jm.at("t").get<int>();
            m.edge = {jm.at("edge")[0].get<int>(), jm.at("edge")[1].get<int>()};
            auto mv = parse_side(jm.at("mover").get<std::string>());
            if (!mv) throw PreconditionError("bad mover in record");
            m.mover = *mv;
            if (jm.contains("annotation")) m.annotation = jm["annotation"];
            rec.moves.push_back(std::move(m));
        }
        rec.final_edge_count = j.at("final_edge_count").get<long long>();
        if (j.contains("forfeits")) {
            rec.forfeits = j["forfeits"].get<std::map<std::string, bool>>();
        }
        if (j.contains("aborted") && j["aborted"].get<bool>()) {
            rec.aborted = true;
            rec.abort_reason = j.value("abort_reason", "");
        }
        return rec;
    }
};

/// A participant. choose() must return a legal move whenever one exists and
/// nullopt only at saturation; the engine verifies both. observe() fires for
/// every applied move (both players' moves), with the pre-move graph.
class Player {
public:
    virtual ~Player() = default;
    virtual std::string name() const = 0;
    virtual void begin_game(int /*n*/, const ForbiddenFamily& /*f*/, Side /*side*/) {}
    virtual std::optional<Edge> choose(const Graph& g, const ForbiddenFamily& f,
                                       const GameRecord& record, Side side,
                                       LegalOracle& oracle) = 0;
    virtual void observe(const Graph& /*g_before*/, Edge /*e*/, Side /*mover*/) {}
    /// Annotation for the move just chosen; sampled after observe().
    virtual nlohmann::json annotation() const { return nlohmann::json(); }
    virtual std::map<std::string, bool> forfeit_flags() const { return {}; }
};

struct GameResult {
    GameRecord record;
    Graph final_graph;
};

inline GameResult play_game(Player& maxp, Player& minip, int n, const ForbiddenFamily& f,
                            Side first_mover = Side::Max) {
    if (n < 1) throw PreconditionError("play_game requires n >= 1");
    Graph g(n);
    GameRecord rec;
    rec.family = f;
    rec.n = n;
    rec.first_mover = first_mover;
    LegalOracle oracle(g, f);
    maxp.begin_game(n, f, Side::Max);
    minip.begin_game(n, f, Side::Mini);

    Side to_move = first_mover;
    while (true) {
        Player& p = to_move == Side::Max ? maxp : minip;
        std::optional<Edge> mv = p.choose(g, f, rec, to_move, oracle);
        if (!mv) {
            if (oracle.first_legal()) {
                rec.aborted = true;
                rec.abort_reason = std::string(side_name(to_move)) + " player '" + p.name() +
                                   "' claimed saturation with legal moves remaining";
            }
            break;
        }
        auto [x, y] = *mv;
        bool valid = x >= 0 && y >= 0 && x < n && y < n && x != y && !g.has_edge(x, y) &&
                     oracle.is_legal(std::min(x, y), std::max(x, y));
        if (!valid) {
            rec.aborted = true;
            rec.abort_reason = std::string(side_name(to_move)) + " player '" + p.name() +
                               "' proposed an invalid move (" + std::to_string(x) + "," +
                               std::to_string(y) + ")";
            break;
        }
        Edge e = make_edge(x, y);
        maxp.observe(g, e, to_move);
        minip.observe(g, e, to_move);
        g.add_edge(e.first, e.second);
        oracle.note_edge_added(e.first, e.second);
        rec.moves.push_back({static_cast<int>(g.edge_count()), e, to_move, p.annotation()});
        to_move = other_side(to_move);
    }
    rec.final_edge_count = g.edge_count();
    for (const auto& [k, v] : maxp.forfeit_flags()) rec.forfeits[k] = v;
    for (const auto& [k, v] : minip.forfeit_flags()) rec.forfeits[k] = v;
    return {std::move(rec), std::move(g)};
}

/// Replays a record from the empty graph: every move legal and alternating,
/// final position saturated, edge count consistent. Returns the list of
/// problems found (empty = clean). Skips the saturation check for aborted
/// records.
inline std::vector<std::string> verify_record(const GameRecord& rec) {
    std::vector<std::string> problems;
    Graph g(rec.n);
    Side expect = rec.first_mover;
    int t = 0;
    for (const auto& m : rec.moves) {
        ++t;
        if (m.t != t) problems.push_back("move index mismatch at t=" + std::to_string(t));
        if (m.mover != expect) problems.push_back("mover out of turn at t=" + std::to_string(t));
        auto [x, y] = m.edge;
        if (x < 0 || y < 0 || x >= rec.n || y >= rec.n || x >= y || g.has_edge(x, y)) {
            problems.push_back("malformed or duplicate edge at t=" + std::to_string(t));
            return problems;
        }
        if (creates_forbidden(g, rec.family, x, y)) {
            problems.push_back("illegal move at t=" + std::to_string(t));
            return problems;
        }
        g.add_edge(x, y);
        expect = other_side(expect);
    }
    if (g.edge_count() != rec.final_edge_count) {
        problems.push_back("final edge count mismatch");
    }
    if (!rec.aborted && !is_saturated(g, rec.family)) {
        problems.push_back("final position not saturated");
    }
    return problems;
}

}  // namespace satgame

#endif
