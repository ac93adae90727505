#ifndef SATGAME_GRAPH_HPP
#define SATGAME_GRAPH_HPP

#include <algorithm>
#include <cstdint>
#include <optional>
#include <queue>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "satgame/errors.hpp"

namespace satgame {

using Edge = std::pair<int, int>;

inline Edge make_edge(int x, int y) {
    if (x == y) throw PreconditionError("self-loop (" + std::to_string(x) + ")");
    return x < y ? Edge{x, y} : Edge{y, x};
}

/// Incremental undirected simple graph. Vertices are 0..n-1. Components and
/// per-component bipartitions are maintained across add_edge; everything else
/// (distances, neighborhood queries) is computed on demand.
class Graph {
public:
    explicit Graph(int n) : n_(n) {
        if (n < 0) throw PreconditionError("negative vertex count");
        adj_.resize(n_);
        comp_.resize(n_);
        color_.assign(n_, 0);
        comp_bipartite_.assign(n_, 1);
        comp_members_.resize(n_);
        for (int v = 0; v < n_; ++v) {
            comp_[v] = v;
            comp_members_[v] = {v};
        }
        component_count_ = n_;
    }

    int n() const { return n_; }
    long long edge_count() const { return edge_count_; }
    int component_count() const { return component_count_; }

    const std::vector<int>& neighbors(int v) const {
        check_vertex(v);
        return adj_[v];
    }

    int degree(int v) const {
        check_vertex(v);
        return static_cast<int>(adj_[v].size());
    }

    bool has_edge(int x, int y) const {
        check_vertex(x);
        check_vertex(y);
        if (x == y) return false;
        const auto& a = adj_[x].size() <= adj_[y].size() ? adj_[x] : adj_[y];
        int other = adj_[x].size() <= adj_[y].size() ? y : x;
        return std::binary_search(a.begin(), a.end(), other);
    }

    int component_of(int v) const {
        check_vertex(v);
        return comp_[v];
    }

    bool same_component(int x, int y) const { return component_of(x) == component_of(y); }

    bool component_bipartite(int v) const {
        check_vertex(v);
        return comp_bipartite_[comp_[v]] != 0;
    }

    /// Two-coloring side of v within its component. Meaningful only while the
    /// component is bipartite.
    int color(int v) const {
        check_vertex(v);
        return color_[v];
    }

    /// Members of v's component, ascending.
    std::vector<int> component_vertices(int v) const {
        check_vertex(v);
        std::vector<int> out = comp_members_[comp_[v]];
        std::sort(out.begin(), out.end());
        return out;
    }

    void add_edge(int x, int y) {
        Edge e = make_edge(x, y);
        x = e.first;
        y = e.second;
        check_vertex(y);
        if (has_edge(x, y)) {
            throw PreconditionError("duplicate edge (" + std::to_string(x) + "," +
                                    std::to_string(y) + ")");
        }
        insert_sorted(adj_[x], y);
        insert_sorted(adj_[y], x);
        ++edge_count_;

        int cx = comp_[x], cy = comp_[y];
        if (cx == cy) {
            if (comp_bipartite_[cx] && color_[x] == color_[y]) comp_bipartite_[cx] = 0;
            return;
        }
        --component_count_;
        // Relabel the smaller component into the larger.
        if (comp_members_[cx].size() < comp_members_[cy].size()) {
            std::swap(cx, cy);
            std::swap(x, y);
        }
        bool merged_bipartite = comp_bipartite_[cx] && comp_bipartite_[cy];
        bool flip = merged_bipartite && color_[x] == color_[y];
        for (int w : comp_members_[cy]) {
            comp_[w] = cx;
            if (flip) color_[w] ^= 1;
        }
        auto& big = comp_members_[cx];
        auto& small = comp_members_[cy];
        big.insert(big.end(), small.begin(), small.end());
        small.clear();
        small.shrink_to_fit();
        comp_bipartite_[cx] = merged_bipartite ? 1 : 0;
    }

    std::optional<int> distance(int x, int y) const {
        check_vertex(x);
        check_vertex(y);
        if (x == y) return 0;
        if (comp_[x] != comp_[y]) return std::nullopt;
        std::vector<int> dist(n_, -1);
        std::queue<int> q;
        dist[x] = 0;
        q.push(x);
        while (!q.empty()) {
            int cur = q.front();
            q.pop();
            for (int w : adj_[cur]) {
                if (dist[w] >= 0) continue;
                dist[w] = dist[cur] + 1;
                if (w == y) return dist[w];
                q.push(w);
            }
        }
        return std::nullopt;
    }

    /// Distances from a source to every vertex (-1 if unreachable).
    std::vector<int> distances_from(int x) const {
        check_vertex(x);
        std::vector<int> dist(n_, -1);
        std::queue<int> q;
        dist[x] = 0;
        q.push(x);
        while (!q.empty()) {
            int cur = q.front();
            q.pop();
            for (int w : adj_[cur]) {
                if (dist[w] < 0) {
                    dist[w] = dist[cur] + 1;
                    q.push(w);
                }
            }
        }
        return dist;
    }

    std::vector<int> isolated_vertices() const {
        std::vector<int> out;
        for (int v = 0; v < n_; ++v) {
            if (adj_[v].empty()) out.push_back(v);
        }
        return out;
    }

    std::optional<int> smallest_isolated() const {
        for (int v = 0; v < n_; ++v) {
            if (adj_[v].empty()) return v;
        }
        return std::nullopt;
    }

    int isolated_count() const {
        int c = 0;
        for (int v = 0; v < n_; ++v) {
            if (adj_[v].empty()) ++c;
        }
        return c;
    }

    /// Proper two-sided split of v's component. The side holding the
    /// component's smallest vertex comes first. Absent when non-bipartite.
    std::optional<std::pair<std::vector<int>, std::vector<int>>> bipartition_of(int v) const {
        check_vertex(v);
        if (!comp_bipartite_[comp_[v]]) return std::nullopt;
        std::vector<int> members = component_vertices(v);
        int anchor_color = color_[members.front()];
        std::vector<int> a, b;
        for (int w : members) (color_[w] == anchor_color ? a : b).push_back(w);
        return std::make_pair(std::move(a), std::move(b));
    }

    std::vector<Edge> edges() const {
        std::vector<Edge> out;
        out.reserve(static_cast<size_t>(edge_count_));
        for (int x = 0; x < n_; ++x) {
            for (int y : adj_[x]) {
                if (y > x) out.emplace_back(x, y);
            }
        }
        return out;
    }

    Graph without_edge(int x, int y) const {
        if (!has_edge(x, y)) throw PreconditionError("without_edge: edge absent");
        Graph g(n_);
        for (const auto& [a, b] : edges()) {
            if (make_edge(a, b) != make_edge(x, y)) g.add_edge(a, b);
        }
        return g;
    }

    std::string to_text() const {
        std::ostringstream os;
        os << n_ << ' ' << edge_count_ << '\n';
        for (const auto& [x, y] : edges()) os << x << ' ' << y << '\n';
        return os.str();
    }

    static Graph from_text(const std::string& text) {
        std::istringstream is(text);
        long long n = -1, m = -1;
        if (!(is >> n >> m) || n < 0 || m < 0) throw PreconditionError("bad graph header");
        Graph g(static_cast<int>(n));
        for (long long i = 0; i < m; ++i) {
            int x, y;
            if (!(is >> x >> y)) throw PreconditionError("truncated edge list");
            g.add_edge(x, y);
        }
        return g;
    }

private:
    void check_vertex(int v) const {
        if (v < 0 || v >= n_) {
            throw PreconditionError("vertex " + std::to_string(v) + " out of range [0," +
                                    std::to_string(n_) + ")");
        }
    }

    static void insert_sorted(std::vector<int>& vec, int value) {
        vec.insert(std::lower_bound(vec.begin(), vec.end(), value), value);
    }

    int n_;
    long long edge_count_ = 0;
    int component_count_;
    std::vector<std::vector<int>> adj_;
    std::vector<int> comp_;
    std::vector<std::uint8_t> color_;
    std::vector<std::uint8_t> comp_bipartite_;
    std::vector<std::vector<int>> comp_members_;
};

}  // namespace satgame

#endif
