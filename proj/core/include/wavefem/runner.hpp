#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wavefem/config.hpp"
#include "wavefem/presets.hpp"

namespace wavefem {

/// Command-line level options shared by preset and config runs.
/// alpha/beta/delta act on presets only (configs state their own damping).
struct RunnerOptions {
    std::vector<int> N_list;
    std::optional<double> alpha;
    std::optional<double> beta;
    std::optional<double> delta;
    std::optional<double> k;
    std::optional<double> T;
    std::optional<std::pair<double, double>> window;
    std::string out_dir = ".";
    std::vector<double> snapshot_times;
};

/// Paths written plus the summary text (also printed by the CLI).
struct RunArtifacts {
    std::vector<std::string> files;
    std::string summary_text;
};

/// Runs a named preset sweep and writes <name>_table.csv (when the preset
/// carries an exact solution), <name>_decay_N<N>.csv per mesh, and
/// <name>_summary.txt into opt.out_dir.
RunArtifacts run_preset(const std::string& name, const RunnerOptions& opt);

/// Same pipeline driven by a config file; the output stem is the file's
/// basename. Config runs have no exact solution, so no table is written.
RunArtifacts run_config(const std::string& path, const RunnerOptions& opt);

}  // namespace wavefem
