#include "chemosem/agent.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <stdexcept>

namespace chemosem {

Intervention Intervention::sense_cap(int n, int onset) {
    if (n < 0 || n > kMaxSensed) {
        throw std::invalid_argument("sensing cap must be in [0, 9], got " + std::to_string(n));
    }
    return {InterventionKind::SenseCap, n, onset};
}

Intervention Intervention::dead(int onset) { return {InterventionKind::Dead, kMaxSensed, onset}; }

Intervention Intervention::fixed(int onset) { return {InterventionKind::Fixed, kMaxSensed, onset}; }

Intervention Intervention::parse(std::string_view text, int onset) {
    if (text == "dead") return dead(onset);
    if (text == "fixed") return fixed(onset);
    if (text.starts_with("cap")) {
        auto digits = text.substr(3);
        if (digits.starts_with(':')) digits.remove_prefix(1);
        int n = -1;
        auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), n);
        if (ec == std::errc{} && ptr == digits.data() + digits.size() && !digits.empty()) {
            return sense_cap(n, onset);
        }
    }
    throw std::invalid_argument("unknown intervention '" + std::string(text) +
                                "' (expected cap:<0-9>, dead or fixed)");
}

std::string Intervention::label() const {
    switch (kind) {
        case InterventionKind::Dead: return "dead";
        case InterventionKind::Fixed: return "fixed";
        case InterventionKind::SenseCap: break;
    }
    return "cap" + std::to_string(cap);
}

int sense(const WorldState& world, Position pos) {
    int count = 0;
    for (const auto& n : world.nutrients) {
        if (chebyshev_distance(n.pos, pos) <= 1) ++count;
    }
    return std::min(count, kMaxSensed);
}

int perceive(int raw, const Intervention& iv, int k) {
    if (iv.kind == InterventionKind::SenseCap && iv.active(k)) return std::min(raw, iv.cap);
    return std::min(raw, kMaxSensed);
}

Mode decide_mode(int sensed_now, int sensed_prev) {
    return (sensed_now < sensed_prev || sensed_now == 0) ? Mode::Tumble : Mode::Run;
}

Position step_position(const BacteriumState& state, Mode mode, const Intervention& iv, int k,
                       const Lattice& lattice, RandomStream& rng) {
    if (!state.alive) {
        throw std::logic_error("step_position called on a dead bacterium");
    }
    if (iv.active(k) && iv.kind != InterventionKind::SenseCap) return state.pos;

    std::array<Position, 9> cells{};
    std::size_t n = 0;
    if (mode == Mode::Tumble) {
        lattice.for_each_at_distance(state.pos, 1, [&](Position p) { cells[n++] = p; });
        return cells[rng.below(n)];
    }
    if (state.pos == state.prev_pos) {
        lattice.for_each_at_distance(state.pos, 0, [&](Position p) { cells[n++] = p; });
        lattice.for_each_at_distance(state.pos, 1, [&](Position p) { cells[n++] = p; });
        // Keep row-major order over the whole 3x3 block.
        std::sort(cells.begin(), cells.begin() + static_cast<std::ptrdiff_t>(n));
        return cells[rng.below(n)];
    }
    return lattice.clamp(2 * state.pos.i - state.prev_pos.i, 2 * state.pos.j - state.prev_pos.j);
}

void eat_and_update_weight(BacteriumState& state, WorldState& world) {
    if (!state.alive) return;
    if (consume_nutrient(world, state.pos)) {
        state.weight_units = std::min(BacteriumState::kWeightFull,
                                      state.weight_units + BacteriumState::kMealUnits);
    }
    state.weight_units -= BacteriumState::kDecayUnits;
    if (state.weight_units <= 0) {
        state.weight_units = 0;
        state.alive = false;
    }
}

void apply_intervention_status(BacteriumState& state, const Intervention& iv, int k) {
    if (iv.kind == InterventionKind::Dead && iv.active(k)) state.alive = false;
}

void advance_bacterium(BacteriumState& state, WorldState& world, const Intervention& iv, int k,
                       const Lattice& lattice, RandomStream& rng) {
    apply_intervention_status(state, iv, k);
    if (!state.alive) {
        state.prev_pos = state.pos;
        return;
    }
    const int sensed = perceive(sense(world, state.pos), iv, k);
    state.mode = decide_mode(sensed, state.prev_sensed);
    state.prev_sensed = sensed;

    const Position next = step_position(state, state.mode, iv, k, lattice, rng);
    state.prev_pos = state.pos;
    state.pos = next;
    eat_and_update_weight(state, world);
}

}  // namespace chemosem
