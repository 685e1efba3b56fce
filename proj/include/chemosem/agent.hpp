#pragma once

#include <string>
#include <string_view>

#include "chemosem/lattice.hpp"
#include "chemosem/rng.hpp"
#include "chemosem/world.hpp"

namespace chemosem {

enum class Mode { Run, Tumble };

enum class InterventionKind { SenseCap, Dead, Fixed };

/// Highest sensable nutrient count; also the cap of the identity intervention.
inline constexpr int kMaxSensed = 9;

/// A modification of perception or behaviour that takes effect from `onset`.
struct Intervention {
    InterventionKind kind = InterventionKind::SenseCap;
    int cap = kMaxSensed;  ///< only meaningful for SenseCap
    int onset = 25;

    static Intervention sense_cap(int n, int onset = 25);
    static Intervention dead(int onset = 25);
    static Intervention fixed(int onset = 25);

    /// Parses "cap:<n>", "cap<n>", "dead" or "fixed". Throws std::invalid_argument.
    static Intervention parse(std::string_view text, int onset = 25);

    bool active(int k) const { return k >= onset; }
    bool is_identity() const { return kind == InterventionKind::SenseCap && cap == kMaxSensed; }

    /// CSV label: "cap0".."cap9", "dead", "fixed".
    std::string label() const;

    friend bool operator==(const Intervention&, const Intervention&) = default;
};

/// The bacterium. Weight is held in integer units of 0.05 so that starvation
/// happens after exactly 20 decays without floating-point drift.
struct BacteriumState {
    static constexpr int kWeightFull = 20;  ///< 1.0
    static constexpr int kDecayUnits = 1;   ///< 0.05
    static constexpr int kMealUnits = 4;    ///< 0.2

    Position pos;
    Position prev_pos;
    int weight_units = kWeightFull;
    bool alive = true;
    int prev_sensed = 0;
    Mode mode = Mode::Tumble;

    static BacteriumState spawn_at(Position p) { return BacteriumState{p, p}; }

    double weight() const { return weight_units / static_cast<double>(kWeightFull); }
};

/// Nutrients within distance 1 of `pos`, counted with multiplicity and
/// clamped to [0, 9].
int sense(const WorldState& world, Position pos);

/// min(raw, n) under an active SenseCap(n); raw otherwise.
int perceive(int raw, const Intervention& iv, int k);

/// Tumble iff the count dropped or is zero.
Mode decide_mode(int sensed_now, int sensed_prev);

/// Next position of a living bacterium. Under Dead or Fixed (active) the
/// position is unchanged. Tumble picks a uniform neighbour at distance 1; Run
/// continues the last displacement clamped into the lattice, or resets to a
/// uniform cell within distance 1 if the last displacement was zero.
Position step_position(const BacteriumState& state, Mode mode, const Intervention& iv, int k,
                       const Lattice& lattice, RandomStream& rng);

/// Eats at most one nutrient on the current cell (+0.2, capped at 1), then
/// decays by 0.05. Reaching weight 0 kills the bacterium.
void eat_and_update_weight(BacteriumState& state, WorldState& world);

/// Marks the bacterium dead if a Dead intervention is active at step k.
void apply_intervention_status(BacteriumState& state, const Intervention& iv, int k);

/// One full agent update from step k to k+1:
/// sense, perceive, decide, move, eat, decay, death check.
void advance_bacterium(BacteriumState& state, WorldState& world, const Intervention& iv, int k,
                       const Lattice& lattice, RandomStream& rng);

}  // namespace chemosem
