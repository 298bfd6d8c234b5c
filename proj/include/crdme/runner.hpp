#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "crdme/config.hpp"
#include "crdme/statistics.hpp"

namespace crdme {

struct RunResult {
    std::filesystem::path dir;
    std::string digest;
    uint64_t replicates = 0;
    uint64_t censored = 0;
    std::optional<MeanCi> mean;  // absent when replicates = 0 or any censored
};

/// Execute one configured run: resolve tables (building or loading the disk
/// cache), run the engine's replicates, and write the CSV outputs into
/// cfg.out. Also writes config_resolved.cfg (the full resolved
/// configuration plus seed and digest) so any run can be reproduced from its
/// output directory alone.
///
/// Outputs: samples.csv always (header-only when replicates = 0);
/// summary.csv and survival.csv when there are samples; events.csv and
/// final_state.csv for the multiparticle engine.
RunResult run(const SimConfig& cfg);

struct SweepPoint {
    SimConfig cfg;
    std::filesystem::path dir;
    bool failed = false;
    std::string error;
    std::optional<MeanCi> mean;
};

struct SweepResult {
    std::vector<SweepPoint> points;
    int failures = 0;
};

/// Run the cross product of a sweep. Each point gets its own subdirectory
/// and derived seed; a failing point is recorded in failures.csv and the
/// sweep continues. Emits combined summary.csv, successive_diffs.csv,
/// divergence_fit.csv, and phi_diag.csv at the sweep root.
SweepResult sweep(const SweepSpec& spec);

}  // namespace crdme
