#include <doctest.h>

#include <map>
#include <stdexcept>

#include "chemosem/agent.hpp"
#include "oracles.hpp"

using namespace chemosem;

namespace {

WorldState world_with(std::initializer_list<Position> cells) {
    WorldState w;
    for (auto p : cells) w.nutrients.push_back({p, 0});
    return w;
}

}  // namespace

TEST_CASE("sense counts the 3x3 neighbourhood with multiplicity") {
    CHECK(sense(WorldState{}, {5, 5}) == 0);
    CHECK(sense(world_with({{5, 5}}), {5, 5}) == 1);
    CHECK(sense(world_with({{5, 5}, {4, 6}, {7, 5}}), {5, 5}) == 2);

    // Twelve stacked nutrients: brute-force count is 12, the sensed value is 9.
    WorldState stacked;
    for (int s = 0; s < 12; ++s) stacked.nutrients.push_back({{4 + s % 3, 4 + (s / 3) % 3}, 0});
    int brute = 0;
    for (const auto& n : stacked.nutrients) brute += chebyshev_distance(n.pos, {5, 5}) <= 1 ? 1 : 0;
    CHECK(brute == 12);
    CHECK(sense(stacked, {5, 5}) == 9);
}

TEST_CASE("perceive applies the sensing cap only after onset") {
    const auto cap4 = Intervention::sense_cap(4, 25);
    CHECK(perceive(7, cap4, 25) == 4);
    CHECK(perceive(7, cap4, 24) == 7);
    CHECK(perceive(7, Intervention::sense_cap(9), 100) == 7);
    CHECK(perceive(3, Intervention::sense_cap(0, 0), 0) == 0);
    CHECK(perceive(8, Intervention::dead(0), 10) == 8);
}

TEST_CASE("decide_mode") {
    CHECK(decide_mode(3, 1) == Mode::Run);
    CHECK(decide_mode(0, 0) == Mode::Tumble);
    CHECK(decide_mode(2, 5) == Mode::Tumble);
    CHECK(decide_mode(4, 4) == Mode::Run);
}

TEST_CASE("intervention parsing and labels") {
    CHECK(Intervention::parse("cap:4") == Intervention::sense_cap(4));
    CHECK(Intervention::parse("cap7", 3) == Intervention::sense_cap(7, 3));
    CHECK(Intervention::parse("dead").label() == "dead");
    CHECK(Intervention::parse("fixed").label() == "fixed");
    CHECK(Intervention::sense_cap(0).label() == "cap0");
    CHECK(Intervention::sense_cap(9).is_identity());
    CHECK_THROWS_AS(Intervention::parse("cap:10"), std::invalid_argument);
    CHECK_THROWS_AS(Intervention::parse("alive"), std::invalid_argument);
    CHECK_THROWS_AS(Intervention::parse("cap:"), std::invalid_argument);
}

TEST_CASE("run mode continues straight and reflects at the boundary") {
    const Lattice lat(10);
    RandomStream rng(5);
    const auto none = Intervention::sense_cap(9);

    BacteriumState cb{{5, 5}, {4, 4}};
    CHECK(step_position(cb, Mode::Run, none, 0, lat, rng) == Position{6, 6});

    cb = BacteriumState{{10, 10}, {9, 9}};
    const Position clamped = step_position(cb, Mode::Run, none, 0, lat, rng);
    CHECK(clamped == Position{10, 10});

    // Next step: pos == prev_pos, so the direction resets to one of the 4 cells
    // within distance 1 of the corner.
    cb.prev_pos = cb.pos;
    cb.pos = clamped;
    CHECK(lat.neighbourhood({10, 10}).size() == 4);
    std::map<Position, long> seen;
    for (int s = 0; s < 4000; ++s) ++seen[step_position(cb, Mode::Run, none, 0, lat, rng)];
    CHECK(seen.size() == 4);
    for (const auto& [p, c] : seen) CHECK(chebyshev_distance(p, {10, 10}) <= 1);

    // Sliding along a wall keeps the parallel component.
    cb = BacteriumState{{10, 5}, {9, 4}};
    CHECK(step_position(cb, Mode::Run, none, 0, lat, rng) == Position{10, 6});
}

TEST_CASE("tumble is uniform over the 8 interior neighbours") {
    const Lattice lat(10);
    RandomStream rng(77);
    const BacteriumState cb{{5, 5}, {5, 4}};
    std::map<Position, long> freq;
    for (int s = 0; s < 100000; ++s) ++freq[step_position(cb, Mode::Tumble, Intervention{}, 0, lat, rng)];
    REQUIRE(freq.size() == 8);
    CHECK_FALSE(freq.contains(Position{5, 5}));
    std::vector<long> counts;
    for (const auto& [p, c] : freq) counts.push_back(c);
    CHECK(oracle::chi_square_uniform(counts) < oracle::chi_square_99(7));
}

TEST_CASE("dead and fixed interventions freeze the position after onset") {
    const Lattice lat(10);
    RandomStream rng(1);
    const BacteriumState cb{{5, 5}, {4, 4}};
    CHECK(step_position(cb, Mode::Run, Intervention::fixed(25), 25, lat, rng) == Position{5, 5});
    CHECK(step_position(cb, Mode::Run, Intervention::fixed(25), 24, lat, rng) == Position{6, 6});
    CHECK(step_position(cb, Mode::Tumble, Intervention::dead(3), 3, lat, rng) == Position{5, 5});

    BacteriumState corpse = cb;
    corpse.alive = false;
    CHECK_THROWS_AS(step_position(corpse, Mode::Run, Intervention{}, 0, lat, rng), std::logic_error);
}

TEST_CASE("eating and weight decay") {
    SUBCASE("no food: 1.0 -> 0.95") {
        auto cb = BacteriumState::spawn_at({3, 3});
        WorldState w;
        eat_and_update_weight(cb, w);
        CHECK(cb.weight() == doctest::Approx(0.95));
        CHECK(cb.alive);
    }
    SUBCASE("meal is capped at 1 and consumes one nutrient") {
        auto cb = BacteriumState::spawn_at({3, 3});
        cb.weight_units = 19;  // 0.95
        auto w = world_with({{3, 3}, {3, 3}});
        eat_and_update_weight(cb, w);
        CHECK(cb.weight() == doctest::Approx(0.95));
        CHECK(w.nutrient_count() == 1);
    }
    SUBCASE("starving to zero kills") {
        auto cb = BacteriumState::spawn_at({3, 3});
        cb.weight_units = 1;  // 0.05
        WorldState w;
        eat_and_update_weight(cb, w);
        CHECK(cb.weight() == 0.0);
        CHECK_FALSE(cb.alive);
    }
    SUBCASE("exactly 20 decays from full weight") {
        auto cb = BacteriumState::spawn_at({3, 3});
        WorldState w;
        int steps = 0;
        while (cb.alive) {
            eat_and_update_weight(cb, w);
            ++steps;
        }
        CHECK(steps == 20);
    }
}

TEST_CASE("advance_bacterium: cap0 always tumbles, dead stays put") {
    const Lattice lat(10);
    RandomStream rng(8);
    auto w = world_with({{5, 6}, {5, 6}, {6, 6}, {4, 4}});
    auto cb = BacteriumState::spawn_at({5, 5});
    for (int k = 0; k < 40; ++k) {
        w.nutrients.push_back({cb.pos, 0});
        cb.weight_units = BacteriumState::kWeightFull;
        advance_bacterium(cb, w, Intervention::sense_cap(0, 0), k, lat, rng);
        CHECK(cb.mode == Mode::Tumble);
        CHECK(chebyshev_distance(cb.pos, cb.prev_pos) == 1);
    }

    auto corpse = BacteriumState::spawn_at({2, 2});
    const int weight = corpse.weight_units;
    WorldState barren;
    Position frozen{};
    for (int k = 0; k < 10; ++k) {
        advance_bacterium(corpse, barren, Intervention::dead(3), k, lat, rng);
        if (k == 2) frozen = corpse.pos;
        if (k > 2) CHECK(corpse.pos == frozen);
    }
    CHECK_FALSE(corpse.alive);
    CHECK(corpse.weight_units == weight - 3);
}
