#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "chemosem/agent.hpp"
#include "chemosem/lattice.hpp"
#include "chemosem/rng.hpp"
#include "chemosem/world.hpp"

namespace chemosem {

/// Everything that determines an ensemble. Aggregate results are a pure
/// function of this struct; the worker count is not part of it.
struct SimConfig {
    WorldParams world;
    Intervention intervention;  ///< onset lives in intervention.onset
    int horizon = 200;          ///< K_max
    int runs = 20000;           ///< E
    std::uint64_t master_seed = 1;

    void validate() const;
};

/// One (cell index, multiplicity) entry of a nutrient snapshot.
struct CellCount {
    std::uint16_t cell;
    std::uint16_t count;

    friend bool operator==(const CellCount&, const CellCount&) = default;
};

/// Nutrient positions at one step as a sorted run-length multiset.
using NutrientSnapshot = std::vector<CellCount>;

NutrientSnapshot snapshot_of(const WorldState& world, const Lattice& lattice);

/// Time series of one replica, indexed by k in [0, horizon].
struct Trace {
    int replica_id = 0;
    std::vector<Position> positions;
    std::vector<NutrientSnapshot> nutrient_snapshots;
    std::vector<std::uint8_t> alive_flags;

    std::size_t length() const { return positions.size(); }

    friend bool operator==(const Trace&, const Trace&) = default;
};

using TraceSet = std::vector<Trace>;

/// Receives finished traces. `consume` may be called concurrently from
/// several worker threads and in any replica order.
class TraceSink {
public:
    virtual ~TraceSink() = default;
    virtual void consume(const Trace& trace) = 0;
};

/// Advances world and bacterium from step k to k+1 in the fixed order:
/// source relocation, spawning, degradation, agent update. Then applies
/// intervention status for step k+1.
void step(WorldState& world, BacteriumState& cb, const SimConfig& cfg, int k,
          const Lattice& lattice, RandomStream& rng);

/// Simulates one replica seeded from (master_seed, replica_id).
Trace run_trace(const SimConfig& cfg, int replica_id);

/// Runs replicas [0, runs) on `threads` OpenMP workers (0 = runtime default)
/// and streams every trace into `sink`. Exceptions from workers are
/// rethrown after the parallel region.
void run_ensemble(const SimConfig& cfg, TraceSink& sink, int threads = 0);

/// Sequential reference of run_ensemble: replicas in increasing id order.
void run_ensemble_serial(const SimConfig& cfg, TraceSink& sink);

/// Materializes all traces, ordered by replica id.
TraceSet collect_traces(const SimConfig& cfg, int threads = 0);

/// Line-oriented dump, one record per (replica, k):
///   replica_id,k,x_i,x_j,alive,i,j:count;i,j:count;...
void write_trace_dump(std::ostream& out, const TraceSet& traces, const Lattice& lattice);

}  // namespace chemosem
