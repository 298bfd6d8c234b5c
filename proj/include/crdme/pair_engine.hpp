#pragma once

#include <optional>
#include <vector>

#include "crdme/lattice.hpp"
#include "crdme/rng.hpp"
#include "crdme/samples.hpp"

namespace crdme {

enum class PairEngineKind { Crdme, Rdme };

/// Two-molecule annihilation problem: one A and one B random-walk on the
/// lattice until their first reaction.
struct PairConfig {
    LatticeSpec lattice;
    double D_A = 10.0;    // um^2/s
    double D_B = 10.0;    // um^2/s
    double lambda = 0.0;  // Doi reaction intensity, 1/s
    double rb = 1e-3;     // reaction radius, um
    PairEngineKind kind = PairEngineKind::Crdme;
    /// RDME same-voxel rate constant (um^2/s). 0 selects the well-mixed
    /// default lambda * pi * rb^2.
    double k = 0.0;
    std::optional<double> t_max;

    double rho() const { return rb / lattice.h(); }

    /// RDME same-voxel reaction propensity k / h^2.
    double rdme_propensity() const;
};

struct PairState {
    Voxel a;
    Voxel b;
    double t = 0.0;
};

/// Reaction propensity of the current state: lambda * phi_{b - a} for CRDME,
/// the k / h^2 same-voxel rate for RDME.
double pair_reaction_propensity(const PairConfig& cfg, const PhiTable& table,
                                const PairState& s);

/// One replicate: uniform independent initial voxels, SSA over the hop
/// channels, first reaction time returned (censored at t_max if configured).
/// The reaction is realized as a killed process: the replicate's first draw
/// is a unit-exponential hazard budget and the reaction fires when the
/// integral of the reaction propensity along the hop path crosses it. This
/// is distributionally identical to racing a reaction channel in the SSA,
/// and it keeps the reaction clock aligned between runs that share a stream
/// (common random numbers across meshes and engines).
Sample simulate_pair(const PairConfig& cfg, const PhiTable& table, RngStream& rng);

/// Replicate ensemble; replicate r uses RngStream(master_seed, r). Output is
/// in replicate order regardless of worker count.
std::vector<Sample> run_pair_replicates(const PairConfig& cfg, const PhiTable& table,
                                        uint64_t replicates, uint64_t master_seed,
                                        int workers);

}  // namespace crdme
