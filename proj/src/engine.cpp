#include "chemosem/engine.hpp"

#include <algorithm>
#include <exception>
#include <ostream>
#include <stdexcept>

#include <omp.h>

namespace chemosem {

void SimConfig::validate() const {
    world.validate();
    if (intervention.onset < 0) throw std::invalid_argument("intervention_onset: must be non-negative");
    if (intervention.kind == InterventionKind::SenseCap &&
        (intervention.cap < 0 || intervention.cap > kMaxSensed)) {
        throw std::invalid_argument("intervention: sensing cap must be in [0, 9]");
    }
    if (horizon < 0) throw std::invalid_argument("horizon: must be non-negative");
    if (runs < 1) throw std::invalid_argument("runs: must be at least 1");
}

NutrientSnapshot snapshot_of(const WorldState& world, const Lattice& lattice) {
    std::vector<std::uint16_t> cells;
    cells.reserve(world.nutrients.size());
    for (const auto& n : world.nutrients) cells.push_back(static_cast<std::uint16_t>(lattice.index(n.pos)));
    std::sort(cells.begin(), cells.end());

    NutrientSnapshot snap;
    for (auto c : cells) {
        if (!snap.empty() && snap.back().cell == c) {
            ++snap.back().count;
        } else {
            snap.push_back({c, 1});
        }
    }
    return snap;
}

void step(WorldState& world, BacteriumState& cb, const SimConfig& cfg, int k,
          const Lattice& lattice, RandomStream& rng) {
    move_source(world, lattice, rng);
    spawn_nutrients(world, lattice, rng);
    degrade_nutrients(world, cfg.world.nutrient_min_life, cfg.world.nutrient_decay_prob, rng);
    advance_bacterium(cb, world, cfg.intervention, k, lattice, rng);
    world.k = k + 1;
    apply_intervention_status(cb, cfg.intervention, k + 1);
}

Trace run_trace(const SimConfig& cfg, int replica_id) {
    const Lattice lattice(cfg.world.lattice_size);
    auto rng = RandomStream::for_replica(cfg.master_seed, static_cast<std::uint64_t>(replica_id));

    const Position cb_start = lattice.at(static_cast<int>(rng.below(static_cast<std::size_t>(lattice.cell_count()))));
    const Position source_start = lattice.at(static_cast<int>(rng.below(static_cast<std::size_t>(lattice.cell_count()))));
    WorldState world = WorldState::initial(cfg.world, source_start);
    BacteriumState cb = BacteriumState::spawn_at(cb_start);
    apply_intervention_status(cb, cfg.intervention, 0);

    const auto length = static_cast<std::size_t>(cfg.horizon) + 1;
    Trace trace;
    trace.replica_id = replica_id;
    trace.positions.reserve(length);
    trace.nutrient_snapshots.reserve(length);
    trace.alive_flags.reserve(length);

    auto record = [&] {
        trace.positions.push_back(cb.pos);
        trace.nutrient_snapshots.push_back(snapshot_of(world, lattice));
        trace.alive_flags.push_back(cb.alive ? 1 : 0);
    };
    record();
    for (int k = 0; k < cfg.horizon; ++k) {
        step(world, cb, cfg, k, lattice, rng);
        record();
    }
    return trace;
}

void run_ensemble(const SimConfig& cfg, TraceSink& sink, int threads) {
    cfg.validate();
    const int runs = cfg.runs;
    const int workers = threads > 0 ? threads : omp_get_max_threads();
    std::exception_ptr failure;

#pragma omp parallel for schedule(dynamic, 16) num_threads(workers)
    for (int e = 0; e < runs; ++e) {
        try {
            sink.consume(run_trace(cfg, e));
        } catch (...) {
#pragma omp critical(chemosem_ensemble_failure)
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);
}

void run_ensemble_serial(const SimConfig& cfg, TraceSink& sink) {
    cfg.validate();
    for (int e = 0; e < cfg.runs; ++e) sink.consume(run_trace(cfg, e));
}

TraceSet collect_traces(const SimConfig& cfg, int threads) {
    cfg.validate();
    TraceSet traces(static_cast<std::size_t>(cfg.runs));
    const int workers = threads > 0 ? threads : omp_get_max_threads();
    std::exception_ptr failure;

#pragma omp parallel for schedule(dynamic, 16) num_threads(workers)
    for (int e = 0; e < cfg.runs; ++e) {
        try {
            traces[static_cast<std::size_t>(e)] = run_trace(cfg, e);
        } catch (...) {
#pragma omp critical(chemosem_collect_failure)
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);
    return traces;
}

void write_trace_dump(std::ostream& out, const TraceSet& traces, const Lattice& lattice) {
    out << "replica_id,k,x_i,x_j,alive,nutrients\n";
    for (const auto& t : traces) {
        for (std::size_t k = 0; k < t.length(); ++k) {
            out << t.replica_id << ',' << k << ',' << t.positions[k].i << ',' << t.positions[k].j << ','
                << int{t.alive_flags[k]} << ',';
            bool first = true;
            for (const auto& cc : t.nutrient_snapshots[k]) {
                const Position p = lattice.at(cc.cell);
                if (!first) out << ';';
                out << p.i << ',' << p.j << ':' << cc.count;
                first = false;
            }
            out << '\n';
        }
    }
}

}  // namespace chemosem
