#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "chemosem/agent.hpp"
#include "chemosem/engine.hpp"
#include "chemosem/information.hpp"

namespace chemosem {

/// How a multi-nutrient snapshot is spread over the reduced state space.
enum class EnvWeighting {
    Multiplicity,  ///< cell c gets count(c) / N_Y; always sums to 1
    Indicator,     ///< every occupied cell gets 1 / N_Y; sums to < 1 when nutrients stack
};

/// A single occupied cell index, or EMPTY when no nutrient exists.
struct ReducedEnvState {
    static constexpr std::uint32_t kEmpty = 0xFFFFFFFFu;
    std::uint32_t value = kEmpty;

    bool is_empty() const { return value == kEmpty; }
    friend bool operator==(const ReducedEnvState&, const ReducedEnvState&) = default;
};

/// Histogram weights are integers in units of 2^-40 of one sample. Integer
/// sums are associative, so parallel accumulation is bit-reproducible.
inline constexpr std::uint64_t kWeightUnit = std::uint64_t{1} << 40;

struct WeightedEnvState {
    ReducedEnvState state;
    std::uint64_t units;

    double weight() const { return static_cast<double>(units) / static_cast<double>(kWeightUnit); }
};

/// Reduced representation of one snapshot. Under Multiplicity the units sum
/// to exactly kWeightUnit (rounding residue goes to the first cell).
std::vector<WeightedEnvState> reduce_env(std::span<const CellCount> snapshot,
                                         EnvWeighting weighting = EnvWeighting::Multiplicity);

/// Weighted counts of (x_k, move k->k+1, reduced y_k) for one time step k.
///
/// The next position x_{k+1} is stored as its offset from x_k. Moves are
/// single-cell, so the offset takes 9 values and is a bijection of x_{k+1}
/// for fixed x_k; I(X_{k+1}; Y_k | X_k) is unchanged by the relabelling.
class JointHistogram {
public:
    explicit JointHistogram(int cell_count);

    int cell_count() const { return cells_; }
    std::size_t source_states() const { return static_cast<std::size_t>(cells_) + 1; }

    /// Index of a reduced state along the source axis (EMPTY is last).
    std::size_t source_index(ReducedEnvState y) const {
        return y.is_empty() ? static_cast<std::size_t>(cells_) : y.value;
    }

    void add(int x1, int move, ReducedEnvState y, std::uint64_t units);
    /// Same as add, safe to call concurrently.
    void add_atomic(int x1, int move, ReducedEnvState y, std::uint64_t units);

    std::uint64_t units(int x1, int move, ReducedEnvState y) const;
    std::uint64_t total_units() const;
    /// Sum of weights in sample units; equals the number of replicas under
    /// Multiplicity weighting.
    double total_weight() const;

    /// Joint pmf (conditioning = x_k, target = move, source = y_k).
    JointTable3 normalized() const;

    friend bool operator==(const JointHistogram&, const JointHistogram&) = default;

private:
    std::size_t offset(int x1, int move, ReducedEnvState y) const;

    int cells_;
    std::vector<std::uint64_t> units_;
};

/// Weighted counts of (x_k, reduced y_k) for the mutual-information study.
class PairHistogram {
public:
    explicit PairHistogram(int cell_count);

    void add(int x, ReducedEnvState y, std::uint64_t units);
    void add_atomic(int x, ReducedEnvState y, std::uint64_t units);
    std::uint64_t total_units() const;
    JointTable2 normalized() const;

    friend bool operator==(const PairHistogram&, const PairHistogram&) = default;

private:
    std::size_t offset(int x, ReducedEnvState y) const;

    int cells_;
    std::vector<std::uint64_t> units_;
};

/// Serial reference: histogram of transition k -> k+1 over a trace set.
/// Throws std::invalid_argument on traces shorter than k + 2, mismatched
/// lengths, or moves longer than one cell.
JointHistogram build_histogram(const TraceSet& traces, int k, const Lattice& lattice,
                               EnvWeighting weighting = EnvWeighting::Multiplicity);

/// Serial reference: histogram of (x_k, y_k) over a trace set.
PairHistogram build_pair_histogram(const TraceSet& traces, int k, const Lattice& lattice,
                                   EnvWeighting weighting = EnvWeighting::Multiplicity);

/// Fraction of traces alive at step k.
double viability(const TraceSet& traces, int k);

/// Per-step series for one intervention.
struct InterventionSeries {
    Intervention intervention;
    std::vector<double> viability;  ///< k in [0, K]
    std::vector<double> cmi;        ///< entry k is I(X_{k+1}; Y_k | X_k), k in [0, K)
    std::vector<double> te;         ///< k in [0, K], te[0] = 0
    std::vector<double> mi;         ///< I(X_k; Y_k), k in [0, K]
    std::vector<std::uint8_t> final_alive;  ///< per replica, alive at K
};

/// Computes every series from finished histograms; per-k work runs in parallel.
InterventionSeries compute_series(const Intervention& iv, std::span<const JointHistogram> transitions,
                                  std::span<const PairHistogram> pairs,
                                  std::span<const std::uint64_t> alive_counts, std::uint64_t runs,
                                  std::vector<std::uint8_t> final_alive, int threads = 0);

/// Streaming TraceSink that folds traces into per-step histograms and
/// survival counts. All updates are integer atomics, so the result does not
/// depend on thread count or trace arrival order.
class EnsembleAccumulator : public TraceSink {
public:
    EnsembleAccumulator(const SimConfig& cfg, EnvWeighting weighting = EnvWeighting::Multiplicity);

    void consume(const Trace& trace) override;

    const JointHistogram& transition(int k) const { return transitions_.at(static_cast<std::size_t>(k)); }
    const PairHistogram& pair(int k) const { return pairs_.at(static_cast<std::size_t>(k)); }
    std::uint64_t alive_count(int k) const { return alive_.at(static_cast<std::size_t>(k)); }

    InterventionSeries finalize(int threads = 0) const;

    /// Upper bound on histogram memory for a configuration, in bytes.
    static std::size_t histogram_bytes(const SimConfig& cfg);

private:
    SimConfig cfg_;
    Lattice lattice_;
    EnvWeighting weighting_;
    std::vector<JointHistogram> transitions_;
    std::vector<PairHistogram> pairs_;
    std::vector<std::uint64_t> alive_;
    std::vector<std::uint8_t> final_alive_;
};

/// Runs the ensemble for `cfg` and returns its series.
InterventionSeries simulate_series(const SimConfig& cfg, EnvWeighting weighting = EnvWeighting::Multiplicity,
                                   int threads = 0);

/// Series for a set of interventions sharing one base configuration, keyed
/// by intervention label.
class MetricsTable {
public:
    void add(InterventionSeries series);

    bool contains(const std::string& label) const { return rows_.contains(label); }
    const InterventionSeries& row(const std::string& label) const;
    const std::map<std::string, InterventionSeries>& rows() const { return rows_; }

    /// V_9[k] - V_fixed[k].
    double viability_gap(int k) const;

private:
    std::map<std::string, InterventionSeries> rows_;
};

struct SemanticInformation {
    double bits = 0.0;
    Intervention argmin;
    double te_default_bits = 0.0;
};

/// The full intervention set: cap0..cap9, dead, fixed.
std::vector<Intervention> all_interventions(int onset = 25);

/// Least T_i[k] over interventions with V_i[k] >= V_9[k] (1 - eps). Ties go
/// to the intervention listed first in all_interventions(). Throws
/// std::invalid_argument if any intervention row is missing.
SemanticInformation observed_semantic_information(const MetricsTable& table, int k, double eps);

}  // namespace chemosem
