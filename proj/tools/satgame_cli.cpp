#include <chrono>
#include <ctime>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "satgame/registry.hpp"
#include "satgame/solver.hpp"

using namespace satgame;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitInvariant = 2;
constexpr int kExitBudget = 3;

ForbiddenFamily parse_family_or_throw(const std::string& text) {
    auto f = ForbiddenFamily::parse(text);
    if (!f) throw PreconditionError("unknown family '" + text + "'");
    return *f;
}

/// "10..100" or "30"; inclusive.
std::pair<int, int> parse_range(const std::string& text) {
    auto pos = text.find("..");
    int lo, hi;
    if (pos == std::string::npos) {
        lo = hi = std::stoi(text);
    } else {
        lo = std::stoi(text.substr(0, pos));
        hi = std::stoi(text.substr(pos + 2));
    }
    if (lo < 1 || hi < lo) throw PreconditionError("empty n-range '" + text + "'");
    return {lo, hi};
}

void write_out(const std::string& path, const std::string& content) {
    if (path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream out(path);
    if (!out) throw PreconditionError("cannot open output file '" + path + "'");
    out << content;
}

int family_k(const ForbiddenFamily& f) {
    switch (f.kind) {
        case FamilyKind::OddUpTo: return f.param;
        case FamilyKind::Single: return (f.param - 1) / 2;
        default: return 0;
    }
}

std::string joined_forfeits(const GameRecord& rec) {
    std::string out;
    for (const auto& [name, raised] : rec.forfeits) {
        if (!raised) continue;
        if (!out.empty()) out += ';';
        out += name;
    }
    return out;
}

int run_play(const std::string& family, int n, const std::string& max_key,
             const std::string& mini_key, std::uint64_t seed, double c, const std::string& out) {
    ForbiddenFamily f = parse_family_or_throw(family);
    auto maxp = make_strategy(max_key, seed, c);
    auto minip = make_strategy(mini_key, seed + 1, c);
    auto res = play_game(*maxp, *minip, n, f);
    write_out(out, res.record.to_json().dump(2) + "\n");
    if (res.record.aborted) {
        std::cerr << "aborted: " << res.record.abort_reason << "\n";
        return kExitInvariant;
    }
    auto problems = verify_record(res.record);
    for (const auto& p : problems) std::cerr << "replay: " << p << "\n";
    return problems.empty() ? kExitOk : kExitInvariant;
}

int run_sweep(const std::string& family, const std::string& range, const std::string& max_key,
              const std::string& mini_key, std::uint64_t seed, double c,
              const std::string& out) {
    ForbiddenFamily f = parse_family_or_throw(family);
    auto [lo, hi] = parse_range(range);
    std::ostringstream csv;
    std::time_t now = std::time(nullptr);
    char stamp[64];
    std::strftime(stamp, sizeof(stamp), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    csv << "# satgame sweep generated " << stamp << "\n";
    csv << "n,k,family,max_strategy,mini_strategy,seed,final_edges,forfeits,"
           "invariant_failures\n";
    int worst = kExitOk;
    for (int n = lo; n <= hi; ++n) {
        auto maxp = make_strategy(max_key, seed, c);
        auto minip = make_strategy(mini_key, seed + 1, c);
        auto res = play_game(*maxp, *minip, n, f);
        auto problems = verify_record(res.record);
        size_t failures = problems.size() + (res.record.aborted ? 1 : 0);
        if (failures) worst = kExitInvariant;
        csv << n << ',' << family_k(f) << ',' << f.to_string() << ',' << max_key << ','
            << mini_key << ',' << seed << ',' << res.record.final_edge_count << ','
            << joined_forfeits(res.record) << ',' << failures << "\n";
    }
    write_out(out, csv.str());
    return worst;
}

int run_solve(const std::string& family, int n, const std::string& first,
              const std::string& out) {
    ForbiddenFamily f = parse_family_or_throw(family);
    auto side = parse_side(first);
    if (!side) throw PreconditionError("first mover must be 'max' or 'mini'");
    SolveStats stats;
    auto start = std::chrono::steady_clock::now();
    int value = sat_g_exact(f, n, *side, &stats);
    double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                         .count();
    nlohmann::json j{{"value", value},
                     {"positions_expanded", stats.positions_expanded},
                     {"elapsed", elapsed}};
    write_out(out, j.dump(2) + "\n");
    return kExitOk;
}

int run_verify(const std::string& in) {
    std::ifstream f(in);
    if (!f) throw PreconditionError("cannot open record '" + in + "'");
    nlohmann::json j;
    f >> j;
    GameRecord rec = GameRecord::from_json(j);
    auto problems = verify_record(rec);
    if (problems.empty()) {
        std::cout << "record clean: " << rec.moves.size() << " moves, "
                  << rec.final_edge_count << " edges\n";
        return kExitOk;
    }
    for (const auto& p : problems) std::cout << "problem: " << p << "\n";
    return kExitInvariant;
}

int run_construct(const std::string& kind, int k, const std::string& out) {
    Graph g(1);
    if (kind == "extremal") {
        g = construct_extremal(k);
    } else if (kind == "g1") {
        g = construct_g1(k);
    } else if (kind == "g2") {
        g = construct_g2(k);
    } else {
        throw PreconditionError("unknown construction '" + kind + "'");
    }
    write_out(out, g.to_text());
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"saturation game engine"};
    app.require_subcommand(1);

    std::string family, max_key = "first-legal", mini_key = "first-legal";
    std::string range, first = "max", out, in, kind;
    int n = 0, k = 1;
    std::uint64_t seed = 0;
    double c = 0.0;

    auto* play = app.add_subcommand("play", "play one game and emit its record");
    play->add_option("--family", family)->required();
    play->add_option("--n", n)->required();
    play->add_option("--max", max_key);
    play->add_option("--mini", mini_key);
    play->add_option("--seed", seed);
    play->add_option("--c", c);
    play->add_option("--out", out);

    auto* sweep = app.add_subcommand("sweep", "play a game per n and emit CSV");
    sweep->add_option("--family", family)->required();
    sweep->add_option("--n", range)->required();
    sweep->add_option("--max", max_key);
    sweep->add_option("--mini", mini_key);
    sweep->add_option("--seed", seed);
    sweep->add_option("--c", c);
    sweep->add_option("--out", out);

    auto* solve = app.add_subcommand("solve", "exact game value");
    solve->add_option("--family", family)->required();
    solve->add_option("--n", n)->required();
    solve->add_option("--first", first);
    solve->add_option("--out", out);

    auto* verify = app.add_subcommand("verify", "replay-check a game record");
    verify->add_option("--in", in)->required();

    auto* construct = app.add_subcommand("construct", "emit a reference construction");
    construct->add_option("--kind", kind)->required();
    construct->add_option("--k", k)->required();
    construct->add_option("--out", out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (play->parsed()) return run_play(family, n, max_key, mini_key, seed, c, out);
        if (sweep->parsed()) return run_sweep(family, range, max_key, mini_key, seed, c, out);
        if (solve->parsed()) return run_solve(family, n, first, out);
        if (verify->parsed()) return run_verify(in);
        if (construct->parsed()) return run_construct(kind, k, out);
    } catch (const BudgetExceeded& e) {
        std::cerr << "budget exceeded: " << e.what() << "\n";
        return kExitBudget;
    } catch (const StrategyError& e) {
        std::cerr << "strategy invariant failure: " << e.what() << "\n";
        return kExitInvariant;
    } catch (const PreconditionError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
