#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include "chemosem/engine.hpp"
#include "chemosem/metrics.hpp"

namespace chemosem {

/// Simulation configuration plus the analysis settings that go with it.
struct ExperimentConfig {
    SimConfig sim;
    double eps = 0.1;
    EnvWeighting weighting = EnvWeighting::Multiplicity;

    void validate() const;

    /// Canonical "key = value" text covering every field, in fixed key order.
    std::string canonical_text() const;
};

/// Thrown for malformed config text; the message names the offending key
/// (or line).
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Parses line-oriented "key = value" text. '#' starts a comment, blank lines
/// are ignored, missing keys keep their defaults. Recognized keys:
///   lattice_size source_rate source_period source_hop nutrient_min_life
///   nutrient_decay_prob intervention intervention_onset horizon runs seed
///   eps env_weighting
ExperimentConfig parse_config(std::string_view text);

ExperimentConfig load_config(const std::filesystem::path& path);

/// Shortest decimal text that round-trips to `v`.
std::string format_real(double v);

/// 64-bit FNV-1a, used for config and output hashes in the manifest.
std::uint64_t fnv1a64(std::string_view bytes);

}  // namespace chemosem
