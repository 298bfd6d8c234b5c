#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "crdme/fenwick.hpp"
#include "crdme/gamma_table.hpp"
#include "crdme/lattice.hpp"
#include "crdme/rng.hpp"

namespace crdme {

enum class EventKind { HopA, HopB, HopC, React };

struct Event {
    double t = 0.0;
    EventKind kind = EventKind::HopA;
    Voxel src;
    Voxel dst;  // hop target / product voxel; equals src for reactions with no product
};

/// Many-particle A + B -> C (or annihilation) on the lattice.
struct MultiConfig {
    LatticeSpec lattice;
    double D_A = 10.0;
    double D_B = 10.0;
    double D_C = 10.0;
    double lambda = 0.0;
    double rb = 1e-3;
    uint64_t a_total = 0;  // initial counts, placed uniformly at random
    uint64_t b_total = 0;
    uint64_t c_total = 0;
    bool make_product = true;  // false: pure annihilation, no C produced
    double t_end = 0.0;        // simulate until this time or until no channel remains
    std::optional<uint64_t> max_events;
    bool log_hops = true;  // false records reaction events only

    double rho() const { return rb / lattice.h(); }
};

struct MultiState {
    std::vector<uint32_t> a;  // per-voxel counts, row-major
    std::vector<uint32_t> b;
    std::vector<uint32_t> c;
    double t = 0.0;
    uint64_t events = 0;
};

/// Incrementally maintained propensities for the multiparticle SSA: one
/// Fenwick tree per diffusing species (voxel rate = count * moves * D / h^2)
/// and one for reactions, r_i = a_i * w_i with w_i = sum_j phi_{j-i} b_j.
/// Every audit_interval events the trees are rebuilt from the counts and the
/// incremental totals are checked against the exact ones.
class PropensityIndex {
public:
    PropensityIndex(const MultiConfig& cfg, const PhiTable& table, const MultiState& s);

    double diffusion_total(int species) const;  // 0 = A, 1 = B, 2 = C
    double reaction_total() const { return lambda_ * react_.total(); }
    double grand_total() const;

    /// Weight w_i of voxel i (phi-weighted count of B partners).
    double partner_weight(int i) const { return w_[i]; }

    /// Full symmetric phi support, lexicographic; cached from the table.
    const std::vector<std::pair<Vec2i, double>>& support() const { return support_; }

    void apply_hop(int species, int from, int to, const MultiState& s);
    void apply_reaction(int i, int j, std::optional<int> product, const MultiState& s);

    int sample_diffusion(int species, double target) const;
    int sample_reaction_site(double target) const { return react_.sample(target / lambda_); }

    /// Exact recompute; throws std::runtime_error if the incrementally
    /// maintained totals have drifted by more than 1e-8 of the peak group
    /// total seen so far. That floor keeps eps-scale rounding accumulation
    /// (repaired by the rebuild anyway) from tripping the check when a
    /// group drains to zero, while a dropped or doubled term still throws.
    void audit_and_rebuild(const MultiState& s);

    uint64_t audit_interval() const { return audit_interval_; }

private:
    void rebuild_from(const MultiState& s);
    void set_reaction(int i, const MultiState& s);

    const PhiTable* table_;
    const LatticeSpec lat_;
    double lambda_;
    double mobility_[3];  // D / h^2 per species
    std::vector<std::pair<Vec2i, double>> support_;  // phi support offsets
    std::vector<double> w_;
    std::vector<uint8_t> move_count_;
    FenwickTree diff_[3];
    FenwickTree react_;
    uint64_t audit_interval_ = 1000000;
};

/// Rate at which one A in voxel i reacts with the B population of voxel j.
double reaction_propensity(const MultiConfig& cfg, const PhiTable& table,
                           const MultiState& s, Voxel i, Voxel j);

/// Remove one A at i and one B at j; place the product (if any) in a voxel
/// drawn from gamma(j - i, .), clamped to the domain. Throws when either
/// count is zero.
void fire_reaction(MultiState& s, const MultiConfig& cfg, const GammaTable& gamma,
                   Voxel i, Voxel j, RngStream& rng, PropensityIndex* index,
                   std::vector<Event>* log);

struct MultiResult {
    MultiState state;
    std::vector<Event> events;
};

/// Full SSA trajectory to t_end (or channel exhaustion / max_events).
/// Replicate ensembles pass the same master seed with distinct replicate
/// numbers, mirroring the pair-engine convention.
MultiResult simulate_multi(const MultiConfig& cfg, const PhiTable& table,
                           const GammaTable& gamma, uint64_t master_seed,
                           uint64_t replicate = 0);

}  // namespace crdme
