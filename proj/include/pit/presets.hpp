#pragma once

#include <string>
#include <vector>

#include "pit/pde.hpp"

namespace pit {

enum class CaseName { Diffusion, DiffusionReaction, AdvectionDiffusionReaction };
enum class Scale { Paper, Desk };

std::string to_string(CaseName name);
std::string to_string(Scale scale);

/// Throws ConfigError on an unknown name.
CaseName parse_case_name(const std::string& text);
Scale parse_scale(const std::string& text);

/// One benchmark configuration: coefficients, grid resolution, horizon, fine
/// step, and the slab counts to sweep. The `paper` scale uses a 51-point axis
/// (h = 2e-2 on [-0.5, 0.5]) and T = 6.4; the `desk` scale shrinks the grid
/// to 33 points and T to 1.6 so a full sweep finishes in minutes, keeping dt
/// and all coefficients.
struct ExperimentPreset {
    CaseName case_name = CaseName::Diffusion;
    VelocityField velocity = VelocityField::Zero;
    double mu = 1.0;
    double r = 0.0;
    int grid_points = 33;  // points per axis, boundary included
    double total_time = 1.6;
    double dt_fine = 1e-3;
    std::vector<int> slab_counts = {4, 8, 16, 32, 64};
    double gaussian_sigma = 0.1;  // initial condition: unit Gaussian at the origin

    /// Grid points >= 3, positive times, nonnegative coefficients, slab
    /// counts >= 2 with N dividing T/dt_fine into whole fine steps is checked
    /// later by the propagator factory; this validates the shape only.
    void validate() const;
};

ExperimentPreset make_preset(CaseName name, Scale scale);

}  // namespace pit
