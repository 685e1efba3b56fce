#pragma once

#include <vector>

#include "chemosem/lattice.hpp"
#include "chemosem/rng.hpp"

namespace chemosem {

/// Parameters of the environment. Defaults are the study defaults.
struct WorldParams {
    int lattice_size = 10;
    int source_rate = 2;      ///< nutrients spawned per step
    int source_period = 5;    ///< steps between source relocations
    int source_hop = 3;       ///< exact relocation distance
    int nutrient_min_life = 10;
    double nutrient_decay_prob = 0.5;  ///< per-step removal probability once old enough

    /// Throws std::invalid_argument naming the offending key.
    void validate() const;
};

struct Nutrient {
    Position pos;
    int age = 0;
};

struct NutrientSource {
    Position pos;
    int steps_since_move = 0;
    int rate = 2;
    int period = 5;
    int hop_distance = 3;
};

/// Environment state at time step k. Nutrients are kept in spawn order, so
/// stacked nutrients on one cell are distinct records.
struct WorldState {
    NutrientSource source;
    std::vector<Nutrient> nutrients;
    int k = 0;

    static WorldState initial(const WorldParams& params, Position source_pos);

    int nutrient_count() const { return static_cast<int>(nutrients.size()); }
};

/// Appends `source.rate` age-0 nutrients, each uniform on the cells at
/// distance exactly 1 from the source.
void spawn_nutrients(WorldState& world, const Lattice& lattice, RandomStream& rng);

/// Advances the relocation timer; on the m-th call since the last move,
/// relocates the source uniformly onto the ring at distance `hop_distance`.
/// Returns true if the source moved.
bool move_source(WorldState& world, const Lattice& lattice, RandomStream& rng);

/// Removes each nutrient of age >= min_life with probability decay_prob
/// (one draw per eligible nutrient, in storage order), then ages survivors.
void degrade_nutrients(WorldState& world, int min_life, double decay_prob, RandomStream& rng);

/// Number of nutrients lying on `cell`.
int nutrients_at(const WorldState& world, Position cell);

/// Removes the oldest nutrient on `cell`. Returns false if there was none.
bool consume_nutrient(WorldState& world, Position cell);

}  // namespace chemosem
