#ifndef SATGAME_SOLVER_HPP
#define SATGAME_SOLVER_HPP

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <unordered_map>
#include <vector>

#include "satgame/engine.hpp"
#include "satgame/family.hpp"
#include "satgame/graph.hpp"
#include "satgame/legality.hpp"

namespace satgame {

/// Isomorphism-canonical edge set: the minimal edge bitset over all vertex
/// permutations. Exhaustive by design; capped at n <= 9 (36 pair bits).
struct CanonicalGraph {
    int n = 0;
    std::uint64_t canonical_edges = 0;
    bool operator==(const CanonicalGraph&) const = default;
};

namespace detail {

inline int pair_index(int x, int y) {
    if (x > y) std::swap(x, y);
    return y * (y - 1) / 2 + x;
}

inline std::uint64_t graph_bits(const Graph& g) {
    std::uint64_t bits = 0;
    for (const auto& [x, y] : g.edges()) bits |= 1ULL << pair_index(x, y);
    return bits;
}

inline Graph bits_to_graph(int n, std::uint64_t bits) {
    Graph g(n);
    for (int y = 1; y < n; ++y) {
        for (int x = 0; x < y; ++x) {
            if (bits >> pair_index(x, y) & 1) g.add_edge(x, y);
        }
    }
    return g;
}

/// All n! pair-index remappings for vertices 0..n-1.
inline const std::vector<std::vector<int>>& pair_permutations(int n) {
    static std::vector<std::vector<std::vector<int>>> cache(10);
    auto& slot = cache[n];
    if (slot.empty()) {
        std::vector<int> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        int npairs = n * (n - 1) / 2;
        do {
            std::vector<int> map(npairs);
            for (int y = 1; y < n; ++y) {
                for (int x = 0; x < y; ++x) {
                    map[pair_index(x, y)] = pair_index(perm[x], perm[y]);
                }
            }
            slot.push_back(std::move(map));
        } while (std::next_permutation(perm.begin(), perm.end()));
    }
    return slot;
}

inline std::uint64_t canonical_bits(int n, std::uint64_t bits) {
    if (n > 9) throw PreconditionError("canonicalize capped at n <= 9");
    if (n < 2) return 0;
    std::uint64_t best = ~0ULL;
    int npairs = n * (n - 1) / 2;
    for (const auto& map : pair_permutations(n)) {
        std::uint64_t mapped = 0;
        for (int i = 0; i < npairs; ++i) {
            if (bits >> i & 1) mapped |= 1ULL << map[i];
        }
        best = std::min(best, mapped);
    }
    return best;
}

}  // namespace detail

inline CanonicalGraph canonicalize(const Graph& g) {
    return {g.n(), detail::canonical_bits(g.n(), detail::graph_bits(g))};
}

struct SolveStats {
    long long positions_expanded = 0;
};

namespace detail {

inline std::vector<std::uint64_t> legal_child_bits(int n, std::uint64_t bits,
                                                   const ForbiddenFamily& f) {
    Graph g = bits_to_graph(n, bits);
    std::vector<std::uint64_t> out;
    for (int y = 1; y < n; ++y) {
        for (int x = 0; x < y; ++x) {
            std::uint64_t bit = 1ULL << pair_index(x, y);
            if ((bits & bit) == 0 && !creates_forbidden(g, f, x, y)) out.push_back(bits | bit);
        }
    }
    return out;
}

class MemoSolver {
public:
    MemoSolver(int n, const ForbiddenFamily& f) : n_(n), f_(f) {}

    int solve(std::uint64_t bits, Side to_move) {
        std::uint64_t canon = canonical_bits(n_, bits);
        std::uint64_t key = canon << 1 | (to_move == Side::Max ? 1 : 0);
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;
        ++stats_.positions_expanded;
        auto children = legal_child_bits(n_, canon, f_);
        int value;
        if (children.empty()) {
            value = std::popcount(canon);
        } else {
            value = to_move == Side::Max ? -1 : 1 << 30;
            for (std::uint64_t child : children) {
                int v = solve(child, other_side(to_move));
                value = to_move == Side::Max ? std::max(value, v) : std::min(value, v);
            }
        }
        memo_[key] = value;
        return value;
    }

    const SolveStats& stats() const { return stats_; }

private:
    int n_;
    ForbiddenFamily f_;
    std::unordered_map<std::uint64_t, int> memo_;
    SolveStats stats_;
};

inline int reference_solve(int n, std::uint64_t bits, const ForbiddenFamily& f, Side to_move) {
    auto children = legal_child_bits(n, bits, f);
    if (children.empty()) return std::popcount(bits);
    int value = to_move == Side::Max ? -1 : 1 << 30;
    for (std::uint64_t child : children) {
        int v = reference_solve(n, child, f, other_side(to_move));
        value = to_move == Side::Max ? std::max(value, v) : std::min(value, v);
    }
    return value;
}

inline int alphabeta_solve(int n, std::uint64_t bits, const ForbiddenFamily& f, Side to_move,
                           int alpha, int beta) {
    auto children = legal_child_bits(n, bits, f);
    if (children.empty()) return std::popcount(bits);
    if (to_move == Side::Max) {
        int value = -1;
        for (std::uint64_t child : children) {
            value = std::max(value,
                             alphabeta_solve(n, child, f, Side::Mini, alpha, beta));
            alpha = std::max(alpha, value);
            if (alpha >= beta) break;
        }
        return value;
    }
    int value = 1 << 30;
    for (std::uint64_t child : children) {
        value = std::min(value, alphabeta_solve(n, child, f, Side::Max, alpha, beta));
        beta = std::min(beta, value);
        if (alpha >= beta) break;
    }
    return value;
}

}  // namespace detail

/// Exact game value by memoized minimax over canonical positions.
/// Hard cap n <= 8 (the spec's "configurable to 8" regime; callers warn).
inline int sat_g_exact(const ForbiddenFamily& f, int n, Side first_mover,
                       SolveStats* stats = nullptr) {
    if (n < 1) throw PreconditionError("sat_g_exact requires n >= 1");
    if (n > 8) throw PreconditionError("sat_g_exact capped at n <= 8");
    if (n == 1) return 0;
    detail::MemoSolver solver(n, f);
    int value = solver.solve(0, first_mover);
    if (stats) *stats = solver.stats();
    return value;
}

/// Memo-free pure recursive reference. Feasible at n <= 5.
inline int sat_g_exact_reference(const ForbiddenFamily& f, int n, Side first_mover) {
    if (n < 1) throw PreconditionError("reference solver requires n >= 1");
    if (n > 5) throw PreconditionError("reference solver capped at n <= 5");
    if (n == 1) return 0;
    return detail::reference_solve(n, 0, f, first_mover);
}

/// Alpha-beta variant (no memo); validated against the reference in tests.
inline int sat_g_exact_alphabeta(const ForbiddenFamily& f, int n, Side first_mover) {
    if (n < 1 || n > 5) throw PreconditionError("alpha-beta solver capped at n <= 5");
    if (n == 1) return 0;
    return detail::alphabeta_solve(n, 0, f, first_mover, -1, 1 << 30);
}

}  // namespace satgame

#endif
