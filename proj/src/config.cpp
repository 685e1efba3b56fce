#include "chemosem/config.hpp"

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

namespace chemosem {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

template <typename Int>
Int parse_integer(std::string_view key, std::string_view value) {
    Int out{};
    auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc{} || ptr != value.data() + value.size() || value.empty()) {
        throw ConfigError(std::string(key) + ": expected an integer, got '" + std::string(value) + "'");
    }
    return out;
}

double parse_real(std::string_view key, std::string_view value) {
    double out{};
    auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc{} || ptr != value.data() + value.size() || value.empty()) {
        throw ConfigError(std::string(key) + ": expected a number, got '" + std::string(value) + "'");
    }
    return out;
}

std::string intervention_key(const Intervention& iv) {
    switch (iv.kind) {
        case InterventionKind::Dead: return "dead";
        case InterventionKind::Fixed: return "fixed";
        case InterventionKind::SenseCap: break;
    }
    return "cap:" + std::to_string(iv.cap);
}

}  // namespace

std::string format_real(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    if (ec != std::errc{}) throw std::runtime_error("number formatting failed");
    return std::string(buf, ptr);
}

void ExperimentConfig::validate() const {
    try {
        sim.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    if (!(eps >= 0.0)) throw ConfigError("eps: must be non-negative");
}

std::string ExperimentConfig::canonical_text() const {
    std::ostringstream out;
    out << "lattice_size = " << sim.world.lattice_size << '\n'
        << "source_rate = " << sim.world.source_rate << '\n'
        << "source_period = " << sim.world.source_period << '\n'
        << "source_hop = " << sim.world.source_hop << '\n'
        << "nutrient_min_life = " << sim.world.nutrient_min_life << '\n'
        << "nutrient_decay_prob = " << format_real(sim.world.nutrient_decay_prob) << '\n'
        << "intervention = " << intervention_key(sim.intervention) << '\n'
        << "intervention_onset = " << sim.intervention.onset << '\n'
        << "horizon = " << sim.horizon << '\n'
        << "runs = " << sim.runs << '\n'
        << "seed = " << sim.master_seed << '\n'
        << "eps = " << format_real(eps) << '\n'
        << "env_weighting = " << (weighting == EnvWeighting::Multiplicity ? "multiplicity" : "indicator") << '\n';
    return out.str();
}

ExperimentConfig parse_config(std::string_view text) {
    ExperimentConfig cfg;
    std::string intervention_text = "cap:9";
    int onset = cfg.sim.intervention.onset;
    std::set<std::string, std::less<>> seen;

    std::size_t line_no = 0;
    while (!text.empty()) {
        ++line_no;
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);

        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;

        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'");
        }
        const auto key = trim(line.substr(0, eq));
        const auto value = trim(line.substr(eq + 1));
        if (!seen.emplace(key).second) throw ConfigError(std::string(key) + ": duplicate key");

        auto& w = cfg.sim.world;
        if (key == "lattice_size") w.lattice_size = parse_integer<int>(key, value);
        else if (key == "source_rate") w.source_rate = parse_integer<int>(key, value);
        else if (key == "source_period") w.source_period = parse_integer<int>(key, value);
        else if (key == "source_hop") w.source_hop = parse_integer<int>(key, value);
        else if (key == "nutrient_min_life") w.nutrient_min_life = parse_integer<int>(key, value);
        else if (key == "nutrient_decay_prob") w.nutrient_decay_prob = parse_real(key, value);
        else if (key == "intervention") intervention_text = std::string(value);
        else if (key == "intervention_onset") onset = parse_integer<int>(key, value);
        else if (key == "horizon") cfg.sim.horizon = parse_integer<int>(key, value);
        else if (key == "runs") cfg.sim.runs = parse_integer<int>(key, value);
        else if (key == "seed") cfg.sim.master_seed = parse_integer<std::uint64_t>(key, value);
        else if (key == "eps") cfg.eps = parse_real(key, value);
        else if (key == "env_weighting") {
            if (value == "multiplicity") cfg.weighting = EnvWeighting::Multiplicity;
            else if (value == "indicator") cfg.weighting = EnvWeighting::Indicator;
            else throw ConfigError("env_weighting: expected 'multiplicity' or 'indicator'");
        } else {
            throw ConfigError(std::string(key) + ": unknown key");
        }
    }

    try {
        cfg.sim.intervention = Intervention::parse(intervention_text, onset);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("intervention: ") + e.what());
    }
    cfg.validate();
    return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open config file " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

}  // namespace chemosem
