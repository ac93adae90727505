#ifndef SATGAME_REGISTRY_HPP
#define SATGAME_REGISTRY_HPP

#include <memory>
#include <string>
#include <vector>

#include "satgame/max_goodness.hpp"
#include "satgame/mini_phase.hpp"
#include "satgame/mod3.hpp"
#include "satgame/players.hpp"
#include "satgame/single_cycle.hpp"

namespace satgame {

inline const std::vector<std::string>& strategy_names() {
    static const std::vector<std::string> names = {
        "gamma-good", "gamma-good-rep", "phase-mini",   "single-cycle-mini",
        "p3alg",      "first-legal",    "random",       "greedy-degree",
    };
    return names;
}

/// Instantiates a strategy by key. `seed` feeds the random player;
/// `c_override` (when > 0) replaces the phase strategy's balance constant.
inline std::unique_ptr<Player> make_strategy(const std::string& key, std::uint64_t seed = 0,
                                             double c_override = 0.0) {
    if (key == "gamma-good") return std::make_unique<MaxGoodPlayer>(false);
    if (key == "gamma-good-rep") return std::make_unique<MaxGoodPlayer>(true);
    if (key == "phase-mini") return std::make_unique<MiniPhasePlayer>(c_override);
    if (key == "single-cycle-mini") return std::make_unique<SingleCyclePlayer>();
    if (key == "p3alg") return std::make_unique<Mod3Player>();
    if (key == "first-legal") return std::make_unique<FirstLegalPlayer>();
    if (key == "random") return std::make_unique<RandomPlayer>(seed);
    if (key == "greedy-degree") return std::make_unique<GreedyDegreePlayer>();
    throw PreconditionError("unknown strategy '" + key + "'");
}

}  // namespace satgame

#endif
