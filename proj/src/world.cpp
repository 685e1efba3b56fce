#include "chemosem/world.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>
#include <string>

namespace chemosem {

namespace {

[[noreturn]] void reject(const std::string& key, const std::string& why) {
    throw std::invalid_argument(key + ": " + why);
}

}  // namespace

void WorldParams::validate() const {
    if (lattice_size < 2 || lattice_size > 255) reject("lattice_size", "must be in [2, 255]");
    if (source_rate < 0) reject("source_rate", "must be non-negative");
    if (source_period < 1) reject("source_period", "must be positive");
    if (source_hop < 1 || source_hop >= lattice_size) {
        reject("source_hop", "must satisfy 1 <= source_hop <= lattice_size - 1");
    }
    if (nutrient_min_life < 0) reject("nutrient_min_life", "must be non-negative");
    if (!(nutrient_decay_prob >= 0.0 && nutrient_decay_prob <= 1.0)) {
        reject("nutrient_decay_prob", "must be in [0, 1]");
    }
}

WorldState WorldState::initial(const WorldParams& params, Position source_pos) {
    WorldState world;
    world.source.pos = source_pos;
    world.source.rate = params.source_rate;
    world.source.period = params.source_period;
    world.source.hop_distance = params.source_hop;
    return world;
}

void spawn_nutrients(WorldState& world, const Lattice& lattice, RandomStream& rng) {
    if (world.source.rate <= 0) return;
    // At most 8 neighbours; avoid a heap allocation per step.
    std::array<Position, 8> cells{};
    std::size_t n = 0;
    lattice.for_each_at_distance(world.source.pos, 1, [&](Position p) { cells[n++] = p; });
    for (int s = 0; s < world.source.rate; ++s) {
        world.nutrients.push_back({cells[rng.below(n)], 0});
    }
}

bool move_source(WorldState& world, const Lattice& lattice, RandomStream& rng) {
    auto& src = world.source;
    if (++src.steps_since_move < src.period) return false;
    src.steps_since_move = 0;

    // A long hop from a central cell has no target at full distance (d = 8 from
    // the middle of a 10 x 10 grid). Such a hop lands on the farthest ring
    // instead. It only happens from the initial position: a full-length hop
    // always ends in the outer band, where the next full hop exists again.
    const int radius = std::min(src.hop_distance, lattice.farthest_distance(src.pos));
    std::vector<Position> candidates;
    candidates.reserve(static_cast<std::size_t>(8 * radius));
    lattice.for_each_at_distance(src.pos, radius, [&](Position p) { candidates.push_back(p); });
    if (candidates.empty()) throw std::logic_error("no relocation candidate");
    src.pos = candidates[rng.below(candidates.size())];
    return true;
}

void degrade_nutrients(WorldState& world, int min_life, double decay_prob, RandomStream& rng) {
    auto& items = world.nutrients;
    std::size_t kept = 0;
    for (std::size_t idx = 0; idx < items.size(); ++idx) {
        Nutrient n = items[idx];
        if (n.age >= min_life && rng.bernoulli(decay_prob)) continue;
        ++n.age;
        items[kept++] = n;
    }
    items.resize(kept);
}

int nutrients_at(const WorldState& world, Position cell) {
    return static_cast<int>(std::count_if(world.nutrients.begin(), world.nutrients.end(),
                                          [&](const Nutrient& n) { return n.pos == cell; }));
}

bool consume_nutrient(WorldState& world, Position cell) {
    auto it = std::find_if(world.nutrients.begin(), world.nutrients.end(),
                           [&](const Nutrient& n) { return n.pos == cell; });
    if (it == world.nutrients.end()) return false;
    world.nutrients.erase(it);
    return true;
}

}  // namespace chemosem
