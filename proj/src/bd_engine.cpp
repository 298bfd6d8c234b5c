#include "crdme/bd_engine.hpp"

#include <cmath>
#include <stdexcept>

namespace crdme {

namespace {

// Fold a coordinate back into [0, L]. Step lengths are tiny compared to L in
// any sane configuration, so the loop almost never runs twice.
inline double reflect(double z, double L)
{
    while (z < 0.0 || z > L) {
        if (z < 0.0)
            z = -z;
        else
            z = 2.0 * L - z;
    }
    return z;
}

}  // namespace

void bd_step(BdState& s, const BdConfig& cfg, RngStream& rng)
{
    const double sig_a = std::sqrt(2.0 * cfg.D_A * cfg.dt);
    const double sig_b = std::sqrt(2.0 * cfg.D_B * cfg.dt);
    double z0, z1;
    rng.normal_pair(&z0, &z1);
    s.a.x = reflect(s.a.x + sig_a * z0, cfg.L);
    s.a.y = reflect(s.a.y + sig_a * z1, cfg.L);
    rng.normal_pair(&z0, &z1);
    s.b.x = reflect(s.b.x + sig_b * z0, cfg.L);
    s.b.y = reflect(s.b.y + sig_b * z1, cfg.L);
    ++s.steps;
}

Sample simulate_bd(const BdConfig& cfg, RngStream& rng)
{
    if (!(cfg.dt > 0.0))
        throw std::invalid_argument("simulate_bd: dt must be positive");
    if (!(cfg.L > 0.0))
        throw std::invalid_argument("simulate_bd: L must be positive");

    const double sig_a = std::sqrt(2.0 * cfg.D_A * cfg.dt);
    const double sig_b = std::sqrt(2.0 * cfg.D_B * cfg.dt);
    const double rb2 = cfg.rb * cfg.rb;
    const double p_react = -std::expm1(-cfg.lambda * cfg.dt);
    const uint64_t max_steps =
        cfg.t_max ? static_cast<uint64_t>(std::ceil(*cfg.t_max / cfg.dt)) : 0;

    BdState s;
    s.a = {cfg.L * rng.uniform(), cfg.L * rng.uniform()};
    s.b = {cfg.L * rng.uniform(), cfg.L * rng.uniform()};

    for (;;) {
        if (cfg.t_max && s.steps >= max_steps)
            return {*cfg.t_max, true};

        double z0, z1;
        rng.normal_pair(&z0, &z1);
        s.a.x = reflect(s.a.x + sig_a * z0, cfg.L);
        s.a.y = reflect(s.a.y + sig_a * z1, cfg.L);
        rng.normal_pair(&z0, &z1);
        s.b.x = reflect(s.b.x + sig_b * z0, cfg.L);
        s.b.y = reflect(s.b.y + sig_b * z1, cfg.L);
        ++s.steps;

        const double dx = s.a.x - s.b.x;
        const double dy = s.a.y - s.b.y;
        if (dx * dx + dy * dy < rb2 && rng.uniform() < p_react)
            return {s.t(cfg.dt), false};
    }
}

std::vector<Sample> run_bd_replicates(const BdConfig& cfg, uint64_t replicates,
                                      uint64_t master_seed, int workers)
{
    return run_ensemble(replicates, workers, [&](uint64_t r) {
        RngStream rng(master_seed, r);
        return simulate_bd(cfg, rng);
    });
}

}  // namespace crdme
