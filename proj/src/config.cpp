#include "pit/config.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "pit/errors.hpp"

namespace pit {

namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

double parse_double(const std::string& value, int line) {
    const char* begin = value.c_str();
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin || *end != '\0') {
        throw ConfigError("config line " + std::to_string(line) + ": expected a number, got '" +
                          value + "'");
    }
    return v;
}

int parse_int(const std::string& value, int line) {
    const char* begin = value.c_str();
    char* end = nullptr;
    const long v = std::strtol(begin, &end, 10);
    if (end == begin || *end != '\0') {
        throw ConfigError("config line " + std::to_string(line) + ": expected an integer, got '" +
                          value + "'");
    }
    return static_cast<int>(v);
}

VelocityField parse_velocity(const std::string& value, int line) {
    if (value == "zero") return VelocityField::Zero;
    if (value == "rotation") return VelocityField::Rotation;
    throw ConfigError("config line " + std::to_string(line) + ": velocity must be zero or rotation");
}

}  // namespace

std::vector<int> parse_slab_list(const std::string& text) {
    std::vector<int> out;
    std::stringstream stream(text);
    std::string item;
    while (std::getline(stream, item, ',')) {
        const std::string token = trim(item);
        if (token.empty()) throw ConfigError("empty entry in slab list '" + text + "'");
        const char* begin = token.c_str();
        char* end = nullptr;
        const long v = std::strtol(begin, &end, 10);
        if (end == begin || *end != '\0' || v < 2) {
            throw ConfigError("slab counts must be integers >= 2, got '" + token + "'");
        }
        out.push_back(static_cast<int>(v));
    }
    if (out.empty()) throw ConfigError("slab list '" + text + "' is empty");
    return out;
}

ConfigOverrides parse_config_text(const std::string& text) {
    ConfigOverrides cfg;
    std::stringstream stream(text);
    std::string raw;
    int line = 0;
    while (std::getline(stream, raw)) {
        ++line;
        if (const auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
        const std::string entry = trim(raw);
        if (entry.empty()) continue;

        const auto eq = entry.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("config line " + std::to_string(line) + ": expected key = value");
        }
        const std::string key = trim(entry.substr(0, eq));
        const std::string value = trim(entry.substr(eq + 1));
        if (key.empty() || value.empty()) {
            throw ConfigError("config line " + std::to_string(line) + ": expected key = value");
        }

        if (key == "case") {
            cfg.case_name = parse_case_name(value);
        } else if (key == "mu") {
            cfg.mu = parse_double(value, line);
        } else if (key == "r") {
            cfg.r = parse_double(value, line);
        } else if (key == "velocity") {
            cfg.velocity = parse_velocity(value, line);
        } else if (key == "grid_points") {
            cfg.grid_points = parse_int(value, line);
        } else if (key == "T") {
            cfg.total_time = parse_double(value, line);
        } else if (key == "dt_fine") {
            cfg.dt_fine = parse_double(value, line);
        } else if (key == "slabs") {
            cfg.slabs = parse_slab_list(value);
        } else if (key == "epsilon") {
            cfg.epsilon = parse_double(value, line);
        } else if (key == "epsilon0") {
            cfg.epsilon0 = parse_double(value, line);
        } else if (key == "max_iters") {
            cfg.max_iters = parse_int(value, line);
        } else if (key == "workers") {
            cfg.workers = parse_int(value, line);
        } else {
            throw ConfigError("config line " + std::to_string(line) + ": unknown key '" + key + "'");
        }
    }
    return cfg;
}

ConfigOverrides parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file '" + path + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_config_text(buffer.str());
}

void apply_overrides(const ConfigOverrides& overrides, ExperimentPreset& preset,
                     SolverConfig& solver, std::optional<int>& workers) {
    if (overrides.case_name) {
        // The case selects the coefficient triple; grid, horizon, and step
        // keep whatever the scale (and the explicit keys below) dictate.
        const ExperimentPreset base = make_preset(*overrides.case_name, Scale::Desk);
        preset.case_name = base.case_name;
        preset.velocity = base.velocity;
        preset.mu = base.mu;
        preset.r = base.r;
    }
    if (overrides.mu) preset.mu = *overrides.mu;
    if (overrides.r) preset.r = *overrides.r;
    if (overrides.velocity) preset.velocity = *overrides.velocity;
    if (overrides.grid_points) preset.grid_points = *overrides.grid_points;
    if (overrides.total_time) preset.total_time = *overrides.total_time;
    if (overrides.dt_fine) preset.dt_fine = *overrides.dt_fine;
    if (overrides.slabs) preset.slab_counts = *overrides.slabs;
    if (overrides.epsilon) solver.tolerance = *overrides.epsilon;
    if (overrides.epsilon0) solver.restart_tolerance = *overrides.epsilon0;
    if (overrides.max_iters) solver.max_iterations = *overrides.max_iters;
    if (overrides.workers) workers = *overrides.workers;
}

}  // namespace pit
