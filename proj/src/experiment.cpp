#include "chemosem/experiment.hpp"

#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace chemosem {

namespace {

std::vector<Intervention> ordered(const MetricsTable& table) {
    std::vector<Intervention> out;
    const int onset = table.rows().empty() ? 25 : table.rows().begin()->second.intervention.onset;
    for (const auto& iv : all_interventions(onset)) {
        if (table.contains(iv.label())) out.push_back(iv);
    }
    return out;
}

void write_series(std::ostream& out, const MetricsTable& table, std::string_view column,
                  const std::vector<double> InterventionSeries::*series) {
    out << "iota,k," << column << '\n';
    for (const auto& iv : ordered(table)) {
        const auto& values = table.row(iv.label()).*series;
        for (std::size_t k = 0; k < values.size(); ++k) {
            out << iv.label() << ',' << k << ',' << format_real(values[k]) << '\n';
        }
    }
}

std::string hex64(std::uint64_t v) {
    std::ostringstream s;
    s << "0x" << std::hex;
    s.width(16);
    s.fill('0');
    s << v;
    return s.str();
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read back " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void check_csv(const std::filesystem::path& path, std::string_view header, std::size_t rows) {
    const std::string text = read_file(path);
    if (!text.starts_with(std::string(header) + "\n")) {
        throw std::runtime_error(path.string() + ": header mismatch");
    }
    std::size_t lines = 0;
    for (char c : text) lines += c == '\n' ? 1 : 0;
    if (lines != rows + 1 || text.back() != '\n') {
        throw std::runtime_error(path.string() + ": expected " + std::to_string(rows) + " rows");
    }
}

}  // namespace

ExperimentPreset make_preset(std::string_view name, const ExperimentConfig& base) {
    ExperimentPreset preset;
    preset.name = std::string(name);
    const auto every = all_interventions(base.sim.intervention.onset);

    auto point = [&](std::string subdir, auto&& tweak) {
        GridPoint gp{std::move(subdir), base, every};
        tweak(gp.config);
        gp.config.validate();
        preset.points.push_back(std::move(gp));
    };

    if (name == "viability_fig3") {
        point("", [](ExperimentConfig&) {});
    } else if (name == "mutual_info_study") {
        point("gradual", [](ExperimentConfig& c) {
            c.sim.world.source_period = 5;
            c.sim.world.source_hop = 3;
        });
        point("jump", [](ExperimentConfig& c) {
            c.sim.world.source_period = 25;
            c.sim.world.source_hop = 8;
        });
    } else if (name == "te_vs_viability") {
        for (int rate : {1, 2, 3}) {
            point("kns" + std::to_string(rate), [rate](ExperimentConfig& c) { c.sim.world.source_rate = rate; });
        }
    } else {
        throw std::invalid_argument("unknown preset '" + std::string(name) +
                                    "' (expected viability_fig3, mutual_info_study or te_vs_viability)");
    }
    return preset;
}

ExperimentPreset single_config_preset(const ExperimentConfig& base) {
    base.validate();
    GridPoint gp{"", base, {}};
    const auto& iv = base.sim.intervention;
    if (!iv.is_identity()) gp.interventions.push_back(Intervention::sense_cap(kMaxSensed, iv.onset));
    gp.interventions.push_back(iv);
    return {"single", {std::move(gp)}};
}

MetricsTable run_grid_point(const GridPoint& point, int threads) {
    MetricsTable table;
    for (const auto& iv : point.interventions) {
        SimConfig cfg = point.config.sim;
        cfg.intervention = iv;
        table.add(simulate_series(cfg, point.config.weighting, threads));
    }
    return table;
}

void write_viability_csv(std::ostream& out, const MetricsTable& table) {
    write_series(out, table, "viability", &InterventionSeries::viability);
}

void write_cmi_csv(std::ostream& out, const MetricsTable& table) {
    write_series(out, table, "cmi_bits", &InterventionSeries::cmi);
}

void write_te_csv(std::ostream& out, const MetricsTable& table) {
    write_series(out, table, "te_bits", &InterventionSeries::te);
}

void write_mi_csv(std::ostream& out, const MetricsTable& table) {
    write_series(out, table, "mi_bits", &InterventionSeries::mi);
}

void write_semantic_csv(std::ostream& out, const MetricsTable& table, double eps) {
    out << "k,eps,argmin_iota,S_bits,te_default_bits\n";
    const auto& reference = table.row("cap9");
    for (std::size_t k = 0; k < reference.te.size(); ++k) {
        const auto s = observed_semantic_information(table, static_cast<int>(k), eps);
        out << k << ',' << format_real(eps) << ',' << s.argmin.label() << ',' << format_real(s.bits) << ','
            << format_real(s.te_default_bits) << '\n';
    }
}

ExperimentReport run_experiment(const ExperimentPreset& preset, const std::filesystem::path& out_dir, int threads,
                                std::ostream* log) {
    namespace fs = std::filesystem;
    ExperimentReport report;
    std::ostringstream manifest;
    manifest << "tool = chemosem\n"
             << "version = " << kToolVersion << '\n'
             << "preset = " << preset.name << '\n';

    struct Output {
        std::string name;
        std::string header;
        std::size_t rows;
        std::string text;
    };

    for (const auto& point : preset.points) {
        const fs::path dir = point.subdir.empty() ? out_dir : out_dir / point.subdir;
        fs::create_directories(dir);
        if (log) *log << "[" << preset.name << "] " << (point.subdir.empty() ? "." : point.subdir) << ": "
                      << point.interventions.size() << " interventions x " << point.config.sim.runs << " runs\n";

        const MetricsTable table = run_grid_point(point, threads);
        const auto steps = static_cast<std::size_t>(point.config.sim.horizon) + 1;
        const auto n_iv = point.interventions.size();

        std::vector<Output> outputs;
        auto emit = [&](std::string name, std::string header, std::size_t rows, auto&& writer) {
            std::ostringstream s;
            writer(s);
            outputs.push_back({std::move(name), std::move(header), rows, s.str()});
        };
        emit("viability.csv", "iota,k,viability", n_iv * steps, [&](std::ostream& o) { write_viability_csv(o, table); });
        emit("cmi.csv", "iota,k,cmi_bits", n_iv * (steps - 1), [&](std::ostream& o) { write_cmi_csv(o, table); });
        emit("te.csv", "iota,k,te_bits", n_iv * steps, [&](std::ostream& o) { write_te_csv(o, table); });
        emit("mi.csv", "iota,k,mi_bits", n_iv * steps, [&](std::ostream& o) { write_mi_csv(o, table); });
        if (ordered(table).size() == all_interventions().size()) {
            emit("semantic.csv", "k,eps,argmin_iota,S_bits,te_default_bits", steps,
                 [&](std::ostream& o) { write_semantic_csv(o, table, point.config.eps); });
        }

        const std::string canonical = point.config.canonical_text();
        manifest << "\n[" << (point.subdir.empty() ? "." : point.subdir) << "]\n"
                 << "config_hash = " << hex64(fnv1a64(canonical)) << '\n'
                 << "master_seed = " << point.config.sim.master_seed << '\n'
                 << "interventions =";
        for (const auto& iv : point.interventions) manifest << ' ' << iv.label();
        manifest << '\n' << canonical;

        for (const auto& o : outputs) {
            const fs::path path = dir / o.name;
            {
                std::ofstream f(path, std::ios::binary | std::ios::trunc);
                if (!f) throw std::runtime_error("cannot open " + path.string() + " for writing");
                f << o.text;
                if (!f.flush()) throw std::runtime_error("failed writing " + path.string());
            }
            check_csv(path, o.header, o.rows);
            const fs::path rel = point.subdir.empty() ? fs::path(o.name) : fs::path(point.subdir) / o.name;
            manifest << "file " << rel.generic_string() << " fnv1a64=" << hex64(fnv1a64(o.text)) << '\n';
            report.files.push_back(rel);
        }
    }

    const fs::path manifest_path = out_dir / "manifest.txt";
    std::ofstream f(manifest_path, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open " + manifest_path.string() + " for writing");
    f << manifest.str();
    if (!f.flush()) throw std::runtime_error("failed writing " + manifest_path.string());
    report.files.emplace_back("manifest.txt");
    return report;
}

}  // namespace chemosem
