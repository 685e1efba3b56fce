#include "chemosem/metrics.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

#include <omp.h>

namespace chemosem {

std::vector<WeightedEnvState> reduce_env(std::span<const CellCount> snapshot, EnvWeighting weighting) {
    std::uint64_t total = 0;
    for (const auto& cc : snapshot) total += cc.count;
    if (total == 0) return {{ReducedEnvState{}, kWeightUnit}};

    std::vector<WeightedEnvState> out;
    out.reserve(snapshot.size());
    std::uint64_t assigned = 0;
    for (const auto& cc : snapshot) {
        if (cc.count == 0) continue;
        const std::uint64_t mass = weighting == EnvWeighting::Multiplicity ? cc.count : 1;
        const std::uint64_t units = mass * kWeightUnit / total;
        out.push_back({ReducedEnvState{cc.cell}, units});
        assigned += units;
    }
    if (weighting == EnvWeighting::Multiplicity) out.front().units += kWeightUnit - assigned;
    return out;
}

// ---------------------------------------------------------------------------

JointHistogram::JointHistogram(int cell_count)
    : cells_(cell_count),
      units_(static_cast<std::size_t>(cell_count) * kMoveCount * (static_cast<std::size_t>(cell_count) + 1), 0) {}

std::size_t JointHistogram::offset(int x1, int move, ReducedEnvState y) const {
    return (static_cast<std::size_t>(x1) * kMoveCount + static_cast<std::size_t>(move)) * source_states() +
           source_index(y);
}

void JointHistogram::add(int x1, int move, ReducedEnvState y, std::uint64_t units) {
    units_[offset(x1, move, y)] += units;
}

void JointHistogram::add_atomic(int x1, int move, ReducedEnvState y, std::uint64_t units) {
    std::uint64_t& slot = units_[offset(x1, move, y)];
#pragma omp atomic update
    slot += units;
}

std::uint64_t JointHistogram::units(int x1, int move, ReducedEnvState y) const {
    return units_[offset(x1, move, y)];
}

std::uint64_t JointHistogram::total_units() const {
    return std::accumulate(units_.begin(), units_.end(), std::uint64_t{0});
}

double JointHistogram::total_weight() const {
    return static_cast<double>(total_units()) / static_cast<double>(kWeightUnit);
}

JointTable3 JointHistogram::normalized() const {
    const std::uint64_t total = total_units();
    if (total == 0) throw std::invalid_argument("cannot normalize an empty histogram");
    std::vector<double> p(units_.size());
    const double scale = 1.0 / static_cast<double>(total);
    for (std::size_t i = 0; i < units_.size(); ++i) p[i] = static_cast<double>(units_[i]) * scale;
    return JointTable3(static_cast<std::size_t>(cells_), kMoveCount, source_states(), std::move(p));
}

// ---------------------------------------------------------------------------

PairHistogram::PairHistogram(int cell_count)
    : cells_(cell_count),
      units_(static_cast<std::size_t>(cell_count) * (static_cast<std::size_t>(cell_count) + 1), 0) {}

std::size_t PairHistogram::offset(int x, ReducedEnvState y) const {
    const auto n_source = static_cast<std::size_t>(cells_) + 1;
    return static_cast<std::size_t>(x) * n_source + (y.is_empty() ? static_cast<std::size_t>(cells_) : y.value);
}

void PairHistogram::add(int x, ReducedEnvState y, std::uint64_t units) { units_[offset(x, y)] += units; }

void PairHistogram::add_atomic(int x, ReducedEnvState y, std::uint64_t units) {
    std::uint64_t& slot = units_[offset(x, y)];
#pragma omp atomic update
    slot += units;
}

std::uint64_t PairHistogram::total_units() const {
    return std::accumulate(units_.begin(), units_.end(), std::uint64_t{0});
}

JointTable2 PairHistogram::normalized() const {
    const std::uint64_t total = total_units();
    if (total == 0) throw std::invalid_argument("cannot normalize an empty histogram");
    std::vector<double> p(units_.size());
    const double scale = 1.0 / static_cast<double>(total);
    for (std::size_t i = 0; i < units_.size(); ++i) p[i] = static_cast<double>(units_[i]) * scale;
    return JointTable2(static_cast<std::size_t>(cells_), static_cast<std::size_t>(cells_) + 1, std::move(p));
}

// ---------------------------------------------------------------------------

namespace {

void check_trace_lengths(const TraceSet& traces, std::size_t needed) {
    if (traces.empty()) throw std::invalid_argument("empty trace set");
    const std::size_t len = traces.front().length();
    for (const auto& t : traces) {
        if (t.length() != len || t.nutrient_snapshots.size() != len || t.alive_flags.size() != len) {
            throw std::invalid_argument("trace lengths differ within the trace set");
        }
    }
    if (len < needed) throw std::invalid_argument("traces are too short for the requested step");
}

int checked_move(Position from, Position to) {
    if (chebyshev_distance(from, to) > 1) {
        throw std::invalid_argument("trace contains a move longer than one cell");
    }
    return move_index(from, to);
}

}  // namespace

JointHistogram build_histogram(const TraceSet& traces, int k, const Lattice& lattice, EnvWeighting weighting) {
    if (k < 0) throw std::invalid_argument("negative time step");
    check_trace_lengths(traces, static_cast<std::size_t>(k) + 2);
    JointHistogram hist(lattice.cell_count());
    const auto kk = static_cast<std::size_t>(k);
    for (const auto& t : traces) {
        const int x1 = lattice.index(t.positions[kk]);
        const int move = checked_move(t.positions[kk], t.positions[kk + 1]);
        for (const auto& y : reduce_env(t.nutrient_snapshots[kk], weighting)) hist.add(x1, move, y.state, y.units);
    }
    return hist;
}

PairHistogram build_pair_histogram(const TraceSet& traces, int k, const Lattice& lattice, EnvWeighting weighting) {
    if (k < 0) throw std::invalid_argument("negative time step");
    check_trace_lengths(traces, static_cast<std::size_t>(k) + 1);
    PairHistogram hist(lattice.cell_count());
    const auto kk = static_cast<std::size_t>(k);
    for (const auto& t : traces) {
        const int x = lattice.index(t.positions[kk]);
        for (const auto& y : reduce_env(t.nutrient_snapshots[kk], weighting)) hist.add(x, y.state, y.units);
    }
    return hist;
}

double viability(const TraceSet& traces, int k) {
    if (k < 0) throw std::invalid_argument("negative time step");
    check_trace_lengths(traces, static_cast<std::size_t>(k) + 1);
    std::size_t alive = 0;
    for (const auto& t : traces) alive += t.alive_flags[static_cast<std::size_t>(k)] ? 1 : 0;
    return static_cast<double>(alive) / static_cast<double>(traces.size());
}

// ---------------------------------------------------------------------------

InterventionSeries compute_series(const Intervention& iv, std::span<const JointHistogram> transitions,
                                  std::span<const PairHistogram> pairs,
                                  std::span<const std::uint64_t> alive_counts, std::uint64_t runs,
                                  std::vector<std::uint8_t> final_alive, int threads) {
    if (pairs.size() != transitions.size() + 1 || alive_counts.size() != pairs.size()) {
        throw std::invalid_argument("compute_series: inconsistent series lengths");
    }
    InterventionSeries out;
    out.intervention = iv;
    out.final_alive = std::move(final_alive);
    out.viability.resize(alive_counts.size());
    for (std::size_t k = 0; k < alive_counts.size(); ++k) {
        out.viability[k] = static_cast<double>(alive_counts[k]) / static_cast<double>(runs);
    }

    out.cmi.assign(transitions.size(), 0.0);
    out.mi.assign(pairs.size(), 0.0);
    const int steps = static_cast<int>(pairs.size());
    const int workers = threads > 0 ? threads : omp_get_max_threads();
    // Each k is computed serially by one worker, so values are schedule-independent.
#pragma omp parallel for schedule(dynamic, 1) num_threads(workers)
    for (int k = 0; k < steps; ++k) {
        const auto kk = static_cast<std::size_t>(k);
        out.mi[kk] = mutual_information(pairs[kk].normalized());
        if (kk < transitions.size()) out.cmi[kk] = conditional_mutual_information(transitions[kk].normalized());
    }
    out.te = transfer_entropy(out.cmi);
    return out;
}

std::size_t EnsembleAccumulator::histogram_bytes(const SimConfig& cfg) {
    const auto cells = static_cast<std::size_t>(cfg.world.lattice_size) * static_cast<std::size_t>(cfg.world.lattice_size);
    const auto steps = static_cast<std::size_t>(cfg.horizon) + 1;
    return steps * cells * (cells + 1) * (kMoveCount + 1) * sizeof(std::uint64_t);
}

EnsembleAccumulator::EnsembleAccumulator(const SimConfig& cfg, EnvWeighting weighting)
    : cfg_(cfg), lattice_(cfg.world.lattice_size), weighting_(weighting) {
    cfg_.validate();
    constexpr std::size_t kBudget = std::size_t{4} << 30;
    if (histogram_bytes(cfg_) > kBudget) {
        throw std::length_error("histograms for lattice_size=" + std::to_string(cfg_.world.lattice_size) +
                                " and horizon=" + std::to_string(cfg_.horizon) + " exceed the 4 GiB budget");
    }
    transitions_.assign(static_cast<std::size_t>(cfg_.horizon), JointHistogram(lattice_.cell_count()));
    pairs_.assign(static_cast<std::size_t>(cfg_.horizon) + 1, PairHistogram(lattice_.cell_count()));
    alive_.assign(static_cast<std::size_t>(cfg_.horizon) + 1, 0);
    final_alive_.assign(static_cast<std::size_t>(cfg_.runs), 0);
}

void EnsembleAccumulator::consume(const Trace& trace) {
    const auto len = static_cast<std::size_t>(cfg_.horizon) + 1;
    if (trace.length() != len || trace.replica_id < 0 || trace.replica_id >= cfg_.runs) {
        throw std::invalid_argument("trace does not belong to this ensemble");
    }
    for (std::size_t k = 0; k < len; ++k) {
        const int x1 = lattice_.index(trace.positions[k]);
        const auto reduced = reduce_env(trace.nutrient_snapshots[k], weighting_);
        if (k + 1 < len) {
            const int move = checked_move(trace.positions[k], trace.positions[k + 1]);
            for (const auto& y : reduced) transitions_[k].add_atomic(x1, move, y.state, y.units);
        }
        for (const auto& y : reduced) pairs_[k].add_atomic(x1, y.state, y.units);
        if (trace.alive_flags[k]) {
            std::uint64_t& slot = alive_[k];
#pragma omp atomic update
            slot += 1;
        }
    }
    // Each replica id is written by exactly one worker.
    final_alive_[static_cast<std::size_t>(trace.replica_id)] = trace.alive_flags.back();
}

InterventionSeries EnsembleAccumulator::finalize(int threads) const {
    return compute_series(cfg_.intervention, transitions_, pairs_, alive_, static_cast<std::uint64_t>(cfg_.runs),
                          final_alive_, threads);
}

InterventionSeries simulate_series(const SimConfig& cfg, EnvWeighting weighting, int threads) {
    EnsembleAccumulator acc(cfg, weighting);
    run_ensemble(cfg, acc, threads);
    return acc.finalize(threads);
}

// ---------------------------------------------------------------------------

void MetricsTable::add(InterventionSeries series) {
    auto label = series.intervention.label();
    rows_.insert_or_assign(std::move(label), std::move(series));
}

const InterventionSeries& MetricsTable::row(const std::string& label) const {
    auto it = rows_.find(label);
    if (it == rows_.end()) throw std::invalid_argument("metrics table has no row for intervention " + label);
    return it->second;
}

double MetricsTable::viability_gap(int k) const {
    const auto kk = static_cast<std::size_t>(k);
    return row("cap9").viability.at(kk) - row("fixed").viability.at(kk);
}

std::vector<Intervention> all_interventions(int onset) {
    std::vector<Intervention> out;
    for (int n = 0; n <= kMaxSensed; ++n) out.push_back(Intervention::sense_cap(n, onset));
    out.push_back(Intervention::dead(onset));
    out.push_back(Intervention::fixed(onset));
    return out;
}

SemanticInformation observed_semantic_information(const MetricsTable& table, int k, double eps) {
    if (eps < 0.0) throw std::invalid_argument("eps must be non-negative");
    const auto kk = static_cast<std::size_t>(k);
    const auto& reference = table.row("cap9");
    const double threshold = reference.viability.at(kk) * (1.0 - eps);

    SemanticInformation best;
    best.te_default_bits = reference.te.at(kk);
    bool found = false;
    for (const auto& iv : all_interventions(reference.intervention.onset)) {
        const auto& row = table.row(iv.label());
        if (row.viability.at(kk) < threshold) continue;
        const double te = row.te.at(kk);
        if (!found || te < best.bits) {
            best.bits = te;
            best.argmin = row.intervention;
            found = true;
        }
    }
    return best;
}

}  // namespace chemosem
