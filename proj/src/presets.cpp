#include "pit/presets.hpp"

#include "pit/errors.hpp"

namespace pit {

std::string to_string(CaseName name) {
    switch (name) {
        case CaseName::Diffusion: return "diffusion";
        case CaseName::DiffusionReaction: return "diffusion_reaction";
        case CaseName::AdvectionDiffusionReaction: return "advection_diffusion_reaction";
    }
    return "unknown";
}

std::string to_string(Scale scale) {
    return scale == Scale::Paper ? "paper" : "desk";
}

CaseName parse_case_name(const std::string& text) {
    if (text == "diffusion") return CaseName::Diffusion;
    if (text == "diffusion_reaction") return CaseName::DiffusionReaction;
    if (text == "advection_diffusion_reaction") return CaseName::AdvectionDiffusionReaction;
    throw ConfigError("unknown case '" + text +
                      "' (expected diffusion, diffusion_reaction, or "
                      "advection_diffusion_reaction)");
}

Scale parse_scale(const std::string& text) {
    if (text == "paper") return Scale::Paper;
    if (text == "desk") return Scale::Desk;
    throw ConfigError("unknown scale '" + text + "' (expected paper or desk)");
}

void ExperimentPreset::validate() const {
    if (grid_points < 3) throw ConfigError("grid_points must be >= 3");
    if (!(total_time > 0.0)) throw ConfigError("T must be positive");
    if (!(dt_fine > 0.0)) throw ConfigError("dt_fine must be positive");
    if (mu < 0.0) throw ConfigError("mu must be nonnegative");
    if (slab_counts.empty()) throw ConfigError("at least one slab count is required");
    for (int n : slab_counts) {
        if (n < 2) throw ConfigError("slab counts must be >= 2");
    }
    if (!(gaussian_sigma > 0.0)) throw ConfigError("gaussian sigma must be positive");
}

ExperimentPreset make_preset(CaseName name, Scale scale) {
    ExperimentPreset p;
    p.case_name = name;
    switch (name) {
        case CaseName::Diffusion:
            p.velocity = VelocityField::Zero;
            p.mu = 1.0;
            p.r = 0.0;
            break;
        case CaseName::DiffusionReaction:
            p.velocity = VelocityField::Zero;
            p.mu = 1.0;
            p.r = 1.5;
            break;
        case CaseName::AdvectionDiffusionReaction:
            p.velocity = VelocityField::Rotation;
            p.mu = 0.1;
            p.r = 0.5;
            break;
    }
    if (scale == Scale::Paper) {
        p.grid_points = 51;  // h = 2e-2 on [-0.5, 0.5]
        p.total_time = 6.4;
    } else {
        p.grid_points = 33;
        p.total_time = 1.6;
    }
    p.dt_fine = 1e-3;
    p.slab_counts = {4, 8, 16, 32, 64};
    return p;
}

}  // namespace pit
