#ifndef SATGAME_PLAYERS_HPP
#define SATGAME_PLAYERS_HPP

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "satgame/engine.hpp"
#include "satgame/rng.hpp"

namespace satgame {

/// Lexicographically smallest legal edge; nullopt at saturation.
class FirstLegalPlayer : public Player {
public:
    std::string name() const override { return "first-legal"; }
    std::optional<Edge> choose(const Graph&, const ForbiddenFamily&, const GameRecord&, Side,
                               LegalOracle& oracle) override {
        return oracle.first_legal();
    }
};

/// Uniform over the legal moves: samples absent pairs without replacement
/// until one proves legal. The first legal pair hit this way is uniform over
/// the legal set, and every discarded pair is discarded permanently (it was
/// present or proven illegal, both monotone).
class RandomPlayer : public Player {
public:
    explicit RandomPlayer(std::uint64_t seed) : seed_(seed), rng_(seed) {}

    std::string name() const override { return "random"; }
    std::uint64_t seed() const { return seed_; }

    void begin_game(int n, const ForbiddenFamily&, Side) override {
        rng_ = SplitMix64(seed_);
        candidates_.clear();
        candidates_.reserve(static_cast<size_t>(n) * (n - 1) / 2);
        for (int x = 0; x < n; ++x) {
            for (int y = x + 1; y < n; ++y) candidates_.emplace_back(x, y);
        }
    }

    std::optional<Edge> choose(const Graph&, const ForbiddenFamily&, const GameRecord&, Side,
                               LegalOracle& oracle) override {
        while (!candidates_.empty()) {
            size_t i = rng_.next_below(candidates_.size());
            Edge e = candidates_[i];
            if (oracle.known_gone(e.first, e.second)) {
                candidates_[i] = candidates_.back();
                candidates_.pop_back();
                continue;
            }
            if (oracle.is_legal(e.first, e.second)) return e;
            candidates_[i] = candidates_.back();
            candidates_.pop_back();
        }
        return std::nullopt;
    }

private:
    std::uint64_t seed_;
    SplitMix64 rng_;
    std::vector<Edge> candidates_;
};

/// Legal edge maximizing the endpoint degree sum, ties lexicographic.
class GreedyDegreePlayer : public Player {
public:
    std::string name() const override { return "greedy-degree"; }

    std::optional<Edge> choose(const Graph& g, const ForbiddenFamily&, const GameRecord&, Side,
                               LegalOracle& oracle) override {
        int n = g.n();
        // Bucket candidate pairs by degree sum; scan buckets high to low.
        buckets_.assign(2 * n, {});
        for (int x = 0; x < n; ++x) {
            for (int y = x + 1; y < n; ++y) {
                if (!oracle.known_gone(x, y)) buckets_[g.degree(x) + g.degree(y)].emplace_back(x, y);
            }
        }
        for (int s = 2 * n - 1; s >= 0; --s) {
            for (const Edge& e : buckets_[s]) {
                if (oracle.is_legal(e.first, e.second)) return e;
            }
        }
        return std::nullopt;
    }

private:
    std::vector<std::vector<Edge>> buckets_;
};

}  // namespace satgame

#endif
