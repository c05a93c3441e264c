#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wavefem/stepper.hpp"

namespace wavefem {

using SpaceTimeGradFn = std::function<std::pair<double, double>(double, double, double)>;

/// Physics-level overrides resolved before a preset is instantiated. k, T and
/// output settings are applied afterwards by the runner; these three change
/// the problem data itself (initial data, forcing, compensator pair).
struct PresetOverrides {
    std::optional<double> alpha;
    std::optional<double> beta;   // example7 only
    std::optional<double> delta;  // example7 only: (alpha, beta) via compensator_params
};

/// One concrete problem built from a preset at mesh size N.
struct PresetInstance {
    SimConfig sim;
    bool has_exact = false;
    SpaceTimeFn exact;          // u(x, y, t)
    SpaceTimeGradFn exact_grad; // (du/dx, du/dy)(x, y, t)
};

/// A named experiment family: default sweep, default mesh for decay studies,
/// and a builder producing the SimConfig plus exact-solution bundle for one N.
struct ExperimentPreset {
    std::string name;
    std::string summary;
    std::vector<int> sweep;  // empty for decay-only presets
    int default_N = 16;
    std::function<PresetInstance(int N, const PresetOverrides&)> build;
};

/// The built-in experiment families example1 .. example7.
const std::vector<ExperimentPreset>& all_presets();

/// Lookup by name; throws std::invalid_argument for unknown names.
const ExperimentPreset& get_preset(const std::string& name);

bool is_preset_name(const std::string& name);

}  // namespace wavefem
