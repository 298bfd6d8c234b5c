#include "crdme/pair_engine.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace crdme {

double PairConfig::rdme_propensity() const
{
    const double keff = k > 0.0 ? k : lambda * std::numbers::pi * rb * rb;
    const double h = lattice.h();
    return keff / (h * h);
}

double pair_reaction_propensity(const PairConfig& cfg, const PhiTable& table,
                                const PairState& s)
{
    if (cfg.kind == PairEngineKind::Rdme)
        return (s.a == s.b) ? cfg.rdme_propensity() : 0.0;
    return cfg.lambda * table.at(s.b.ix - s.a.ix, s.b.iy - s.a.iy);
}

Sample simulate_pair(const PairConfig& cfg, const PhiTable& table, RngStream& rng)
{
    const LatticeSpec& lat = cfg.lattice;
    const double rate_a = hop_rate(cfg.D_A, lat);
    const double rate_b = hop_rate(cfg.D_B, lat);
    const bool rdme = cfg.kind == PairEngineKind::Rdme;
    const double rdme_prop = rdme ? cfg.rdme_propensity() : 0.0;
    const double t_max = cfg.t_max ? *cfg.t_max : 0.0;

    // Hazard budget first, so runs sharing a stream share the reaction
    // clock no matter how many hop draws each consumes afterwards.
    const double budget = rng.exponential(1.0);

    PairState s;
    s.a = {static_cast<int>(rng.uniform_below(lat.N)),
           static_cast<int>(rng.uniform_below(lat.N))};
    s.b = {static_cast<int>(rng.uniform_below(lat.N)),
           static_cast<int>(rng.uniform_below(lat.N))};

    double burned = 0.0;  // reaction hazard integrated along the path
    for (;;) {
        const MoveList moves_a = allowed_moves(s.a, lat);
        const MoveList moves_b = allowed_moves(s.b, lat);
        double react;
        if (rdme)
            react = (s.a == s.b) ? rdme_prop : 0.0;
        else
            react = cfg.lambda * table.at(s.b.ix - s.a.ix, s.b.iy - s.a.iy);

        // Offset at which the hazard integral would cross the budget if the
        // pair stayed put; the rate is constant between hops.
        const double to_react =
            react > 0.0 ? (budget - burned) / react
                        : std::numeric_limits<double>::infinity();

        const double hop_a_total = moves_a.count * rate_a;
        const double hop_b_total = moves_b.count * rate_b;
        const double hops = hop_a_total + hop_b_total;
        if (!(hops > 0.0)) {
            if (react > 0.0) {
                // N = 1: nobody moves, the reaction clock just runs out.
                if (cfg.t_max && s.t + to_react > t_max)
                    return {t_max, true};
                return {s.t + to_react, false};
            }
            // Frozen state (N = 1, no reactive overlap): the molecules can
            // never meet.
            if (cfg.t_max)
                return {t_max, true};
            throw std::runtime_error("simulate_pair: no enabled channel and no time cap");
        }

        const double dt = rng.exponential(hops);
        if (to_react <= dt) {
            if (cfg.t_max && s.t + to_react > t_max)
                return {t_max, true};
            return {s.t + to_react, false};
        }
        if (cfg.t_max && s.t + dt > t_max)
            return {t_max, true};
        s.t += dt;
        burned += react * dt;

        double target = rng.uniform() * hops;
        if (target < hop_a_total) {
            s.a = moves_a.target[std::min(moves_a.count - 1,
                                          static_cast<int>(target / rate_a))];
        } else {
            target -= hop_a_total;
            s.b = moves_b.target[std::min(moves_b.count - 1,
                                          static_cast<int>(target / rate_b))];
        }
    }
}

std::vector<Sample> run_pair_replicates(const PairConfig& cfg, const PhiTable& table,
                                        uint64_t replicates, uint64_t master_seed,
                                        int workers)
{
    return run_ensemble(replicates, workers, [&](uint64_t r) {
        RngStream rng(master_seed, r);
        return simulate_pair(cfg, table, rng);
    });
}

}  // namespace crdme
