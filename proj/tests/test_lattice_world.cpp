#include <doctest.h>

#include <algorithm>
#include <map>
#include <stdexcept>

#include "chemosem/lattice.hpp"
#include "chemosem/world.hpp"
#include "oracles.hpp"

using namespace chemosem;

TEST_CASE("chebyshev distance") {
    CHECK(chebyshev_distance({3, 3}, {3, 3}) == 0);
    CHECK(chebyshev_distance({1, 1}, {2, 3}) == 2);
    CHECK(chebyshev_distance({1, 1}, {9, 9}) == 8);
    CHECK(chebyshev_distance({2, 3}, {1, 1}) == chebyshev_distance({1, 1}, {2, 3}));
}

TEST_CASE("lattice rings are clipped and exact") {
    const Lattice lat(10);
    CHECK(lat.ring({5, 5}, 1).size() == 8);
    CHECK(lat.ring({1, 1}, 1).size() == 3);
    CHECK(lat.ring({1, 5}, 1).size() == 5);
    CHECK(lat.neighbourhood({10, 10}).size() == 4);

    // Brute-force enumeration of the grid for the relocation candidate set.
    std::vector<Position> expected;
    for (int i = 1; i <= 10; ++i)
        for (int j = 1; j <= 10; ++j)
            if (std::max(std::abs(i - 1), std::abs(j - 1)) == 8) expected.push_back({i, j});
    const auto ring = lat.ring({1, 1}, 8);
    CHECK(ring == expected);
    CHECK(ring.size() == 17);
    for (const auto& p : ring) CHECK(chebyshev_distance(p, {1, 1}) == 8);
}

TEST_CASE("rings are non-empty exactly up to the farthest corner") {
    for (int n = 2; n <= 12; ++n) {
        const Lattice lat(n);
        for (int idx = 0; idx < lat.cell_count(); ++idx) {
            const Position p = lat.at(idx);
            int brute = 0;
            for (int other = 0; other < lat.cell_count(); ++other) brute = std::max(brute, chebyshev_distance(p, lat.at(other)));
            CHECK(lat.farthest_distance(p) == brute);
            for (int hop = 1; hop < n; ++hop) CHECK(lat.ring(p, hop).empty() == (hop > brute));
        }
    }
    // Centre of the default grid: nothing at distance 8.
    CHECK(Lattice(10).ring({5, 5}, 8).empty());
}

TEST_CASE("lattice index round trip and clamp") {
    const Lattice lat(7);
    for (int idx = 0; idx < lat.cell_count(); ++idx) CHECK(lat.index(lat.at(idx)) == idx);
    CHECK(lat.clamp(0, 8) == Position{1, 7});
    CHECK(lat.clamp(11, -3) == Position{7, 1});
    CHECK_THROWS_AS(Lattice(1), std::invalid_argument);
}

TEST_CASE("world params validation") {
    WorldParams p;
    CHECK_NOTHROW(p.validate());
    p.source_hop = 10;
    CHECK_THROWS_WITH_AS(p.validate(), doctest::Contains("source_hop"), std::invalid_argument);
    p.source_hop = 9;
    CHECK_NOTHROW(p.validate());
    p.nutrient_decay_prob = 1.5;
    CHECK_THROWS_WITH_AS(p.validate(), doctest::Contains("nutrient_decay_prob"), std::invalid_argument);
}

TEST_CASE("spawn adds exactly rate nutrients on the ring, never on the source") {
    const Lattice lat(10);
    RandomStream rng(7);
    WorldParams params;
    auto world = WorldState::initial(params, {1, 1});
    for (int s = 0; s < 50; ++s) spawn_nutrients(world, lat, rng);
    CHECK(world.nutrient_count() == 100);
    for (const auto& n : world.nutrients) {
        CHECK(n.age == 0);
        CHECK(chebyshev_distance(n.pos, {1, 1}) == 1);
    }

    params.source_rate = 0;
    auto empty = WorldState::initial(params, {4, 4});
    spawn_nutrients(empty, lat, rng);
    CHECK(empty.nutrients.empty());
}

TEST_CASE("spawn placement is uniform over the 8 interior neighbours") {
    const Lattice lat(10);
    RandomStream rng(2024);
    WorldParams params;
    params.source_rate = 1;
    auto world = WorldState::initial(params, {5, 5});
    std::map<Position, long> freq;
    for (int s = 0; s < 100000; ++s) {
        world.nutrients.clear();
        spawn_nutrients(world, lat, rng);
        ++freq[world.nutrients.front().pos];
    }
    REQUIRE(freq.size() == 8);
    CHECK_FALSE(freq.contains(Position{5, 5}));
    std::vector<long> counts;
    for (const auto& [pos, c] : freq) counts.push_back(c);
    CHECK(oracle::chi_square_uniform(counts) < oracle::chi_square_99(7));
}

TEST_CASE("source relocates every m steps at exactly d_max") {
    const Lattice lat(10);
    RandomStream rng(11);

    SUBCASE("gradual: m = 5, d_max = 3") {
        WorldParams params;
        auto world = WorldState::initial(params, {5, 5});
        std::vector<int> moves;
        for (int k = 0; k < 30; ++k) {
            const Position before = world.source.pos;
            if (move_source(world, lat, rng)) {
                moves.push_back(k + 1);
                CHECK(chebyshev_distance(before, world.source.pos) == 3);
            }
            CHECK(world.source.steps_since_move < world.source.period);
        }
        CHECK(moves == std::vector<int>{5, 10, 15, 20, 25, 30});
    }
    SUBCASE("jump: m = 25, d_max = 8") {
        WorldParams params;
        params.source_period = 25;
        params.source_hop = 8;
        auto world = WorldState::initial(params, {1, 1});
        std::vector<int> moves;
        for (int k = 0; k < 75; ++k) {
            const Position before = world.source.pos;
            if (move_source(world, lat, rng)) {
                moves.push_back(k + 1);
                CHECK(chebyshev_distance(before, world.source.pos) == 8);
            }
        }
        CHECK(moves == std::vector<int>{25, 50, 75});
    }
    SUBCASE("jump from the centre: first hop is as long as the grid allows, later hops are exact") {
        WorldParams params;
        params.source_period = 1;
        params.source_hop = 8;
        for (int trial = 0; trial < 50; ++trial) {
            auto world = WorldState::initial(params, {5, 6});
            REQUIRE(move_source(world, lat, rng));
            CHECK(chebyshev_distance({5, 6}, world.source.pos) == 5);
            for (int hop = 0; hop < 20; ++hop) {
                const Position before = world.source.pos;
                REQUIRE(move_source(world, lat, rng));
                CHECK(chebyshev_distance(before, world.source.pos) == 8);
            }
        }
    }
}

TEST_CASE("degradation respects the minimum lifetime") {
    RandomStream rng(3);
    WorldState world;
    for (int a = 0; a < 10; ++a) world.nutrients.push_back({{2, 2}, a});
    degrade_nutrients(world, 10, 1.0, rng);
    CHECK(world.nutrient_count() == 10);  // none old enough yet
    for (int a = 0; a < 10; ++a) CHECK(world.nutrients[static_cast<std::size_t>(a)].age == a + 1);

    degrade_nutrients(world, 10, 1.0, rng);
    CHECK(world.nutrient_count() == 9);  // the one that reached age 10 is removed with p = 1

    WorldState keep;
    keep.nutrients.assign(20, Nutrient{{3, 3}, 50});
    degrade_nutrients(keep, 10, 0.0, rng);
    CHECK(keep.nutrient_count() == 20);
}

TEST_CASE("degradation removal frequency matches the Bernoulli mean") {
    RandomStream rng(99);
    WorldState world;
    world.nutrients.assign(100000, Nutrient{{4, 4}, 10});
    degrade_nutrients(world, 10, 0.5, rng);
    const double removed = 1.0 - world.nutrient_count() / 100000.0;
    CHECK(std::abs(removed - 0.5) < 0.01);
}

TEST_CASE("consume removes exactly one nutrient from a stack") {
    WorldState world;
    world.nutrients = {{{2, 2}, 4}, {{3, 3}, 1}, {{2, 2}, 0}};
    CHECK(nutrients_at(world, {2, 2}) == 2);
    CHECK(consume_nutrient(world, {2, 2}));
    CHECK(nutrients_at(world, {2, 2}) == 1);
    CHECK(world.nutrients.front().pos == Position{3, 3});
    CHECK_FALSE(consume_nutrient(world, {9, 9}));
}
