#ifndef SATGAME_LEGALITY_HPP
#define SATGAME_LEGALITY_HPP

#include <algorithm>
#include <array>
#include <cstdlib>
#include <optional>
#include <queue>
#include <string>
#include <vector>

#include "satgame/errors.hpp"
#include "satgame/family.hpp"
#include "satgame/graph.hpp"

namespace satgame {

/// Node-expansion budget for the exact path searches. Exhausting it raises
/// BudgetExceeded; the oracle never guesses.
struct SearchBudget {
    long long remaining;
    explicit SearchBudget(long long r) : remaining(r) {}
    void charge(long long cost = 1) {
        remaining -= cost;
        if (remaining < 0) throw BudgetExceeded("legality search budget exhausted");
    }
};

inline long long default_legality_budget() {
    if (const char* env = std::getenv("SATGAME_BUDGET")) {
        char* end = nullptr;
        long long v = std::strtoll(env, &end, 10);
        if (end && *end == '\0' && v > 0) return v;
    }
    return 10'000'000;
}

namespace detail {

/// Cap a path length to C, folding larger values into two parity buckets
/// C+1 / C+2 that preserve the length's parity.
inline int capped_length(int len, int C) {
    if (len <= C) return len;
    return C + 1 + ((len - (C + 1)) & 1);
}

/// Whether a (capped) x-y path length closes a forbidden cycle. Bucket values
/// stand for "longer than C with this parity"; only cofinite families forbid
/// arbitrarily long odd cycles, i.e. arbitrarily long even paths.
inline bool capped_total_forbidden(const ForbiddenFamily& f, int total, int C) {
    if (total <= C) return f.is_forbidden(total + 1);
    return f.cofinite() && total % 2 == 0;
}

/// Relevant path-length cap for the family on n vertices: beyond it only
/// parity matters (cofinite) or nothing is forbidden (bounded families).
inline int path_cap(const ForbiddenFamily& f, int n) {
    switch (f.kind) {
        case FamilyKind::AllOdd: return 2;
        case FamilyKind::AllOddExcept3: return 4;
        default: return f.max_relevant_length(n) - 1;
    }
}

/// The chain of biconnected blocks between x and y. Every simple x-y path
/// passes through exactly these blocks in order, entering and leaving each
/// block at the listed terminals.
struct BlockChain {
    std::vector<std::vector<int>> blocks;  // vertex sets, chain order
    std::vector<int> terminals;            // size blocks+1; front()=x, back()=y
};

struct BlockFinder {
    const Graph& g;
    std::vector<int> disc, low, parent;
    std::vector<std::pair<int, int>> edge_stack;
    std::vector<std::vector<int>> blocks;
    int timer = 0;

    explicit BlockFinder(const Graph& gr)
        : g(gr), disc(gr.n(), -1), low(gr.n(), 0), parent(gr.n(), -1) {}

    void pop_block(int x, int y) {
        std::vector<int> verts;
        std::vector<char> seen(g.n(), 0);
        while (true) {
            auto [a, b] = edge_stack.back();
            edge_stack.pop_back();
            for (int v : {a, b}) {
                if (!seen[v]) {
                    seen[v] = 1;
                    verts.push_back(v);
                }
            }
            if ((a == x && b == y) || (a == y && b == x)) break;
        }
        blocks.push_back(std::move(verts));
    }

    void run(int root) {
        // Iterative DFS; each frame tracks the next neighbor index to visit.
        std::vector<std::pair<int, size_t>> stack;
        disc[root] = low[root] = timer++;
        stack.emplace_back(root, 0);
        while (!stack.empty()) {
            auto& [v, idx] = stack.back();
            const auto& nbrs = g.neighbors(v);
            if (idx < nbrs.size()) {
                int w = nbrs[idx++];
                if (disc[w] < 0) {
                    parent[w] = v;
                    edge_stack.emplace_back(v, w);
                    disc[w] = low[w] = timer++;
                    stack.emplace_back(w, 0);
                } else if (w != parent[v] && disc[w] < disc[v]) {
                    edge_stack.emplace_back(v, w);
                    low[v] = std::min(low[v], disc[w]);
                }
            } else {
                stack.pop_back();
                if (!stack.empty()) {
                    int p = stack.back().first;
                    low[p] = std::min(low[p], low[v]);
                    if (low[v] >= disc[p]) pop_block(p, v);
                }
            }
        }
    }
};

/// Builds the block chain between x and y (same component, x != y), via the
/// block-cut tree. Returns nullopt only if x,y are disconnected.
inline std::optional<BlockChain> block_chain(const Graph& g, int x, int y) {
    if (!g.same_component(x, y)) return std::nullopt;
    BlockFinder bf(g);
    bf.run(x);
    const auto& blocks = bf.blocks;
    int nb = static_cast<int>(blocks.size());

    // Block-cut tree nodes: [0, nb) blocks, [nb, nb+n) vertices (only those in
    // >= 2 blocks, plus x and y, get used as tree nodes).
    std::vector<std::vector<int>> in_blocks(g.n());
    for (int b = 0; b < nb; ++b) {
        for (int v : blocks[b]) in_blocks[v].push_back(b);
    }
    auto node_of = [&](int v) {
        return in_blocks[v].size() == 1 ? in_blocks[v][0] : nb + v;
    };
    int total_nodes = nb + g.n();
    std::vector<int> prev(total_nodes, -2);
    std::queue<int> q;
    int start = node_of(x), goal = node_of(y);
    prev[start] = -1;
    q.push(start);
    while (!q.empty() && prev[goal] == -2) {
        int cur = q.front();
        q.pop();
        if (cur < nb) {
            for (int v : blocks[cur]) {
                if (in_blocks[v].size() > 1 && prev[nb + v] == -2) {
                    prev[nb + v] = cur;
                    q.push(nb + v);
                }
            }
        } else {
            for (int b : in_blocks[cur - nb]) {
                if (prev[b] == -2) {
                    prev[b] = cur;
                    q.push(b);
                }
            }
        }
    }
    if (prev[goal] == -2) return std::nullopt;

    std::vector<int> node_path;
    for (int cur = goal; cur != -1; cur = prev[cur]) node_path.push_back(cur);
    std::reverse(node_path.begin(), node_path.end());

    // Tree-path nodes alternate block / cut vertex. Interior cut vertices are
    // the hand-off terminals; x and y themselves bound the chain.
    BlockChain chain;
    chain.terminals.push_back(x);
    for (size_t i = 0; i < node_path.size(); ++i) {
        int node = node_path[i];
        if (node < nb) {
            chain.blocks.push_back(blocks[node]);
        } else if (i > 0 && i + 1 < node_path.size()) {
            chain.terminals.push_back(node - nb);
        }
    }
    chain.terminals.push_back(y);
    return chain;
}

/// Collects which of the `needed` capped lengths are achieved by simple a-b
/// paths inside the given vertex set. Exhaustive DFS, pruned by parity-aware
/// walk distances to b (a lower bound on simple-path length per parity).
class BlockLengthSearch {
public:
    BlockLengthSearch(const Graph& g, const std::vector<int>& verts, int a, int b, int C,
                      const std::vector<char>& needed, SearchBudget& budget)
        : g_(g), a_(a), b_(b), C_(C), needed_(needed), budget_(budget) {
        sz_ = static_cast<int>(verts.size());
        local_id_.assign(g.n(), -1);
        for (int i = 0; i < sz_; ++i) local_id_[verts[i]] = i;
        adj_.resize(sz_);
        for (int i = 0; i < sz_; ++i) {
            for (int w : g.neighbors(verts[i])) {
                if (local_id_[w] >= 0) adj_[i].push_back(local_id_[w]);
            }
        }
        verts_ = verts;
        lb_ = local_id_[b_];
        compute_parity_dists();
        // Visit closer-to-b neighbors first so short witnesses surface early.
        for (auto& nb : adj_) {
            std::sort(nb.begin(), nb.end(), [&](int p, int q) {
                return std::min(pd_[p][0], pd_[p][1]) < std::min(pd_[q][0], pd_[q][1]);
            });
        }
        collected_.assign(C_ + 3, 0);
        // Drop targets the parity-walk bound already rules out (e.g. the wrong
        // parity inside a bipartite block), so the search never exhausts the
        // block proving them unreachable.
        live_ = needed;
        int la = local_id_[a_];
        for (int v = 1; v <= C_ + 2; ++v) {
            if (!live_[v]) continue;
            bool feasible;
            if (v <= C_) {
                feasible = v <= sz_ - 1 && pd_[la][v & 1] <= v;
            } else {
                int parity = v & 1;
                int lo = std::max(C_ + 1, pd_[la][parity]);
                if ((lo & 1) != parity) ++lo;
                feasible = lo <= sz_ - 1;
            }
            if (!feasible) live_[v] = 0;
        }
        missing_ = 0;
        for (char c : live_) missing_ += c ? 1 : 0;
    }

    std::vector<char> run() {
        if (missing_ == 0) return collected_;
        visited_.assign(sz_, 0);
        int la = local_id_[a_];
        visited_[la] = 1;
        dfs(la, 0, 1);
        return collected_;
    }

private:
    static constexpr int kInf = 1 << 28;

    void compute_parity_dists() {
        pd_.assign(sz_, {kInf, kInf});
        int lb = local_id_[b_];
        std::queue<std::pair<int, int>> q;
        pd_[lb][0] = 0;
        q.push({lb, 0});
        while (!q.empty()) {
            auto [v, p] = q.front();
            q.pop();
            for (int w : adj_[v]) {
                if (pd_[w][p ^ 1] == kInf) {
                    pd_[w][p ^ 1] = pd_[v][p] + 1;
                    q.push({w, p ^ 1});
                }
            }
        }
    }

    bool value_feasible_from(int value, int len_at_w, int w, int max_extra) const {
        if (value <= C_) {
            int rem = value - len_at_w;
            if (rem < 0 || rem > max_extra) return false;
            if (rem == 0) return false;  // landing on b is handled separately
            return pd_[w][rem & 1] <= rem;
        }
        // Parity bucket: any length > C_ with value's parity.
        int parity = value & 1;
        int rem_parity = (parity ^ (len_at_w & 1));
        int lo = std::max({1, C_ + 1 - len_at_w, pd_[w][rem_parity]});
        if ((lo & 1) != rem_parity) ++lo;
        return lo <= max_extra;
    }

    // Returns true when every live target has been collected (stop signal).
    bool dfs(int v, int len, int vis_count) {
        budget_.charge();
        for (int w : adj_[v]) {
            if (w == lb_) {
                int t = capped_length(len + 1, C_);
                if (live_[t] && !collected_[t]) {
                    collected_[t] = 1;
                    if (--missing_ == 0) return true;
                }
                continue;
            }
            if (visited_[w]) continue;
            int len_w = len + 1;
            int max_extra = sz_ - (vis_count + 1);
            bool useful = false;
            for (int val = 1; val <= C_ + 2 && !useful; ++val) {
                if (live_[val] && !collected_[val]) {
                    useful = value_feasible_from(val, len_w, w, max_extra);
                }
            }
            if (!useful) continue;
            visited_[w] = 1;
            bool done = dfs(w, len_w, vis_count + 1);
            visited_[w] = 0;
            if (done) return true;
        }
        return false;
    }

    const Graph& g_;
    int a_, b_, C_, sz_;
    const std::vector<char>& needed_;
    SearchBudget& budget_;
    std::vector<int> local_id_, verts_;
    int lb_ = -1;
    std::vector<std::vector<int>> adj_;
    std::vector<std::array<int, 2>> pd_;
    std::vector<char> visited_, collected_, live_;
    int missing_;
};

/// Exact answer for "does some simple x-y path close a forbidden cycle",
/// by composing per-block achievable path lengths along the block chain.
inline bool chain_query(const Graph& g, const ForbiddenFamily& f, int x, int y, int C,
                        SearchBudget& budget) {
    auto chain_opt = block_chain(g, x, y);
    if (!chain_opt) return false;
    const BlockChain& chain = *chain_opt;
    int r = static_cast<int>(chain.blocks.size());

    std::vector<char> sums(C + 3, 0);
    sums[0] = 1;
    for (int i = 0; i < r; ++i) {
        int suffix_min = r - 1 - i;  // every later block adds at least one edge
        std::vector<char> needed(C + 3, 0);
        bool any_needed = false;
        for (int w = 1; w <= C + 2; ++w) {
            for (int s = 0; s <= C + 2 && !needed[w]; ++s) {
                if (!sums[s]) continue;
                int t = capped_length(s + w, C);
                if (f.cofinite()) {
                    needed[w] = 1;  // parity buckets stay forbidden-capable
                } else if (t <= C && t + suffix_min <= C) {
                    needed[w] = 1;
                }
            }
            any_needed = any_needed || needed[w];
        }
        if (!any_needed) return false;
        BlockLengthSearch search(g, chain.blocks[i], chain.terminals[i], chain.terminals[i + 1],
                                 C, needed, budget);
        std::vector<char> achieved = search.run();
        std::vector<char> next(C + 3, 0);
        for (int s = 0; s <= C + 2; ++s) {
            if (!sums[s]) continue;
            for (int w = 1; w <= C + 2; ++w) {
                if (achieved[w]) next[capped_length(s + w, C)] = 1;
            }
        }
        sums = std::move(next);
    }
    for (int t = 1; t <= C + 2; ++t) {
        if (sums[t] && capped_total_forbidden(f, t, C)) return true;
    }
    return false;
}

/// Exact: does g contain a simple x-y path of length >= min_len?
inline bool has_path_at_least(const Graph& g, int x, int y, int min_len, SearchBudget& budget) {
    if (x == y || !g.same_component(x, y)) return false;
    int C = std::max(min_len, 1);
    auto chain_opt = block_chain(g, x, y);
    if (!chain_opt) return false;
    const BlockChain& chain = *chain_opt;
    int r = static_cast<int>(chain.blocks.size());
    std::vector<char> sums(C + 3, 0);
    sums[0] = 1;
    std::vector<char> needed(C + 3, 1);
    needed[0] = 0;
    for (int i = 0; i < r; ++i) {
        BlockLengthSearch search(g, chain.blocks[i], chain.terminals[i], chain.terminals[i + 1],
                                 C, needed, budget);
        std::vector<char> achieved = search.run();
        std::vector<char> next(C + 3, 0);
        for (int s = 0; s <= C + 2; ++s) {
            if (!sums[s]) continue;
            for (int w = 1; w <= C + 2; ++w) {
                if (achieved[w]) next[capped_length(s + w, C)] = 1;
            }
        }
        sums = std::move(next);
    }
    for (int t = min_len; t <= C + 2; ++t) {
        if (sums[t]) return true;
    }
    return false;
}

}  // namespace detail

/// Exact: does g contain a simple x-y path of length >= min_len? Budgeted.
inline bool has_long_path(const Graph& g, int x, int y, int min_len,
                          SearchBudget* budget = nullptr) {
    SearchBudget local(default_legality_budget());
    return detail::has_path_at_least(g, x, y, min_len, budget ? *budget : local);
}

/// Exact: true iff g contains a simple x-y path whose closure is a forbidden
/// cycle, i.e. adding xy would create a member of the family.
inline bool creates_forbidden(const Graph& g, const ForbiddenFamily& f, int x, int y,
                              SearchBudget* budget = nullptr) {
    Edge e = make_edge(x, y);
    x = e.first;
    y = e.second;
    if (g.has_edge(x, y)) throw PreconditionError("creates_forbidden: edge already present");
    int mrl = f.max_relevant_length(g.n());
    if (mrl < 3) return false;
    if (!g.same_component(x, y)) return false;

    if (g.component_bipartite(x)) {
        if (g.color(x) != g.color(y)) return false;  // all x-y paths odd, cycles even
        switch (f.kind) {
            case FamilyKind::AllOdd:
                return true;  // the shortest path is even, closing an odd cycle
            case FamilyKind::OddUpTo:
                return *g.distance(x, y) <= mrl - 1;
            case FamilyKind::AllOddExcept3:
                if (*g.distance(x, y) >= 4) return true;
                break;  // distance 2: need an even path of length >= 4
            case FamilyKind::Single:
                break;
        }
    }

    int C = detail::path_cap(f, g.n());
    SearchBudget local(default_legality_budget());
    SearchBudget& b = budget ? *budget : local;
    return detail::chain_query(g, f, x, y, C, b);
}

/// All absent edges whose addition is legal, ascending lexicographic.
inline std::vector<Edge> legal_moves(const Graph& g, const ForbiddenFamily& f,
                                     SearchBudget* budget = nullptr) {
    std::vector<Edge> out;
    for (int x = 0; x < g.n(); ++x) {
        for (int y = x + 1; y < g.n(); ++y) {
            if (!g.has_edge(x, y) && !creates_forbidden(g, f, x, y, budget)) {
                out.emplace_back(x, y);
            }
        }
    }
    return out;
}

/// True iff g contains no forbidden cycle. Checks each edge of a non-bipartite
/// component for a forbidden cycle through it.
inline bool audit_no_forbidden(const Graph& g, const ForbiddenFamily& f,
                               SearchBudget* budget = nullptr) {
    int mrl = f.max_relevant_length(g.n());
    if (mrl < 3) return true;
    if (f.kind == FamilyKind::AllOdd) {
        for (int v = 0; v < g.n(); ++v) {
            if (!g.component_bipartite(v)) return false;
        }
        return true;
    }
    for (const auto& [a, b] : g.edges()) {
        if (g.component_bipartite(a)) continue;  // bipartite components carry only even cycles
        Graph reduced = g.without_edge(a, b);
        if (!reduced.same_component(a, b)) continue;
        if (creates_forbidden(reduced, f, a, b, budget)) return false;
    }
    return true;
}

/// True iff no legal move remains. Precondition (audited): g itself is clean.
inline bool is_saturated(const Graph& g, const ForbiddenFamily& f,
                         SearchBudget* budget = nullptr) {
    if (!audit_no_forbidden(g, f, budget)) {
        throw PreconditionError("is_saturated: graph already contains a forbidden cycle");
    }
    for (int x = 0; x < g.n(); ++x) {
        for (int y = x + 1; y < g.n(); ++y) {
            if (!g.has_edge(x, y) && !creates_forbidden(g, f, x, y, budget)) return false;
        }
    }
    return true;
}

}  // namespace satgame

#endif
