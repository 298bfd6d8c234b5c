#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "crdme/geometry.hpp"
#include "crdme/rng.hpp"
#include "crdme/samples.hpp"

namespace crdme {

/// Brownian-dynamics reference: two point molecules in [0, L]^2 with
/// reflecting walls, reacting while closer than rb.
struct BdConfig {
    double L = 0.2;       // domain edge, um
    double D_A = 10.0;    // um^2/s
    double D_B = 10.0;    // um^2/s
    double lambda = 0.0;  // Doi reaction intensity, 1/s
    double rb = 1e-3;     // reaction radius, um
    double dt = 0.0;      // time step, s (required)
    std::optional<double> t_max;
};

struct BdState {
    Vec2 a;
    Vec2 b;
    uint64_t steps = 0;

    double t(double dt) const { return static_cast<double>(steps) * dt; }
};

/// Advance both molecules one time step: independent Gaussian increments of
/// standard deviation sqrt(2 D dt) per coordinate, folded back into the
/// domain at the walls.
void bd_step(BdState& s, const BdConfig& cfg, RngStream& rng);

/// One replicate: uniform initial positions; after each step, if the pair is
/// closer than rb a reaction fires with probability 1 - exp(-lambda dt).
/// Time is step_count * dt; censored at t_max when configured.
Sample simulate_bd(const BdConfig& cfg, RngStream& rng);

std::vector<Sample> run_bd_replicates(const BdConfig& cfg, uint64_t replicates,
                                      uint64_t master_seed, int workers);

}  // namespace crdme
