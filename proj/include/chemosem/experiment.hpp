#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "chemosem/config.hpp"
#include "chemosem/metrics.hpp"

namespace chemosem {

inline constexpr std::string_view kToolVersion = "1.0.0";

/// One parameter setting of an experiment, run for every listed
/// intervention with shared seeds. Output goes to out_dir/subdir.
struct GridPoint {
    std::string subdir;  ///< empty for the output root
    ExperimentConfig config;
    std::vector<Intervention> interventions;
};

struct ExperimentPreset {
    std::string name;
    std::vector<GridPoint> points;
};

/// Known presets: viability_fig3, mutual_info_study, te_vs_viability.
/// Parameters not fixed by the preset come from `base`.
ExperimentPreset make_preset(std::string_view name, const ExperimentConfig& base);

/// A single grid point for `base`: its configured intervention, plus cap9 as
/// the reference when it is not the identity.
ExperimentPreset single_config_preset(const ExperimentConfig& base);

/// Runs every intervention of a grid point.
MetricsTable run_grid_point(const GridPoint& point, int threads = 0);

/// CSV writers. Rows are ordered by intervention (cap0..cap9, dead, fixed),
/// then by k. Reals use the shortest round-trip representation.
void write_viability_csv(std::ostream& out, const MetricsTable& table);
void write_cmi_csv(std::ostream& out, const MetricsTable& table);
void write_te_csv(std::ostream& out, const MetricsTable& table);
void write_mi_csv(std::ostream& out, const MetricsTable& table);
/// One row per k; requires all twelve interventions.
void write_semantic_csv(std::ostream& out, const MetricsTable& table, double eps);

struct ExperimentReport {
    std::vector<std::filesystem::path> files;  ///< relative to out_dir
};

/// Runs all grid points and writes CSVs plus manifest.txt under out_dir.
/// Every written CSV is re-read and checked (header and row count) before
/// the manifest is written. Throws on any failure.
ExperimentReport run_experiment(const ExperimentPreset& preset, const std::filesystem::path& out_dir,
                                int threads = 0, std::ostream* log = nullptr);

}  // namespace chemosem
