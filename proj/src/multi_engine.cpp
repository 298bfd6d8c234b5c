#include "crdme/multi_engine.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace crdme {

namespace {

std::vector<uint32_t>& species_counts(MultiState& s, int species)
{
    switch (species) {
    case 0:
        return s.a;
    case 1:
        return s.b;
    default:
        return s.c;
    }
}

}  // namespace

PropensityIndex::PropensityIndex(const MultiConfig& cfg, const PhiTable& table,
                                 const MultiState& s)
    : table_(&table),
      lat_(cfg.lattice),
      lambda_(cfg.lambda),
      w_(cfg.lattice.voxel_count(), 0.0),
      diff_{FenwickTree(cfg.lattice.voxel_count()), FenwickTree(cfg.lattice.voxel_count()),
            FenwickTree(cfg.lattice.voxel_count())},
      react_(cfg.lattice.voxel_count())
{
    const double h2 = lat_.h() * lat_.h();
    mobility_[0] = cfg.D_A / h2;
    mobility_[1] = cfg.D_B / h2;
    mobility_[2] = cfg.D_C / h2;
    for (const PhiEntry& e : table.entries())
        if (e.value > 0.0)
            support_.push_back({e.m, e.value});
    move_count_.resize(lat_.voxel_count());
    for (int iy = 0; iy < lat_.N; ++iy)
        for (int ix = 0; ix < lat_.N; ++ix)
            move_count_[voxel_index({ix, iy}, lat_)] =
                static_cast<uint8_t>(allowed_moves({ix, iy}, lat_).count);
    rebuild_from(s);
}

double PropensityIndex::diffusion_total(int species) const
{
    return diff_[species].total();
}

double PropensityIndex::grand_total() const
{
    return diff_[0].total() + diff_[1].total() + diff_[2].total() + reaction_total();
}

void PropensityIndex::set_reaction(int i, const MultiState& s)
{
    react_.set(i, s.a[i] > 0 ? s.a[i] * w_[i] : 0.0);
}

void PropensityIndex::apply_hop(int species, int from, int to, const MultiState& s)
{
    const std::vector<uint32_t>& counts =
        species == 0 ? s.a : (species == 1 ? s.b : s.c);
    diff_[species].set(from, counts[from] * move_count_[from] * mobility_[species]);
    diff_[species].set(to, counts[to] * move_count_[to] * mobility_[species]);
    if (species == 0) {
        set_reaction(from, s);
        set_reaction(to, s);
    } else if (species == 1) {
        // Every A voxel within reach of either endpoint sees its partner
        // weight change.
        const int fx = from % lat_.N, fy = from / lat_.N;
        const int tx = to % lat_.N, ty = to / lat_.N;
        for (const auto& [m, p] : support_) {
            const int ix = fx - m.x, iy = fy - m.y;
            if (lat_.contains(ix, iy)) {
                const int i = ix + lat_.N * iy;
                w_[i] -= p;
                set_reaction(i, s);
            }
        }
        for (const auto& [m, p] : support_) {
            const int ix = tx - m.x, iy = ty - m.y;
            if (lat_.contains(ix, iy)) {
                const int i = ix + lat_.N * iy;
                w_[i] += p;
                set_reaction(i, s);
            }
        }
    }
}

void PropensityIndex::apply_reaction(int i, int j, std::optional<int> product,
                                     const MultiState& s)
{
    diff_[0].set(i, s.a[i] * move_count_[i] * mobility_[0]);
    diff_[1].set(j, s.b[j] * move_count_[j] * mobility_[1]);
    if (product)
        diff_[2].set(*product, s.c[*product] * move_count_[*product] * mobility_[2]);
    const int jx = j % lat_.N, jy = j / lat_.N;
    for (const auto& [m, p] : support_) {
        const int ix = jx - m.x, iy = jy - m.y;
        if (lat_.contains(ix, iy)) {
            const int k = ix + lat_.N * iy;
            w_[k] -= p;
            set_reaction(k, s);
        }
    }
    set_reaction(i, s);
}

int PropensityIndex::sample_diffusion(int species, double target) const
{
    return diff_[species].sample(target);
}

void PropensityIndex::rebuild_from(const MultiState& s)
{
    for (int i = 0; i < lat_.voxel_count(); ++i) {
        diff_[0].set(i, s.a[i] * move_count_[i] * mobility_[0]);
        diff_[1].set(i, s.b[i] * move_count_[i] * mobility_[1]);
        diff_[2].set(i, s.c[i] * move_count_[i] * mobility_[2]);
    }
    std::fill(w_.begin(), w_.end(), 0.0);
    for (int jy = 0; jy < lat_.N; ++jy) {
        for (int jx = 0; jx < lat_.N; ++jx) {
            const uint32_t bj = s.b[jx + lat_.N * jy];
            if (bj == 0)
                continue;
            for (const auto& [m, p] : support_) {
                const int ix = jx - m.x, iy = jy - m.y;
                if (lat_.contains(ix, iy))
                    w_[ix + lat_.N * iy] += p * bj;
            }
        }
    }
    for (int i = 0; i < lat_.voxel_count(); ++i)
        set_reaction(i, s);
    for (FenwickTree& f : diff_)
        f.rebuild();
    react_.rebuild();
}

void PropensityIndex::audit_and_rebuild(const MultiState& s)
{
    const double before[4] = {diff_[0].total(), diff_[1].total(), diff_[2].total(),
                              react_.total()};
    const double peak[4] = {diff_[0].peak_total(), diff_[1].peak_total(),
                            diff_[2].peak_total(), react_.peak_total()};
    rebuild_from(s);
    const double after[4] = {diff_[0].total(), diff_[1].total(), diff_[2].total(),
                             react_.total()};
    for (int k = 0; k < 4; ++k) {
        // Scale by the peak total the group ever carried, not the current
        // one: a group that drains to zero keeps legitimate eps-size
        // residue from the +/- updates since the last rebuild.
        const double scale = std::max({std::fabs(after[k]), peak[k], 1e-300});
        if (std::fabs(before[k] - after[k]) > 1e-8 * scale) {
            char buf[160];
            std::snprintf(buf, sizeof buf,
                          "propensity audit: group %d drifted from %.17g to %.17g", k,
                          before[k], after[k]);
            throw std::runtime_error(buf);
        }
    }
}

double reaction_propensity(const MultiConfig& cfg, const PhiTable& table,
                           const MultiState& s, Voxel i, Voxel j)
{
    const double p = table.at(j.ix - i.ix, j.iy - i.iy);
    const uint32_t ai = s.a[voxel_index(i, cfg.lattice)];
    const uint32_t bj = s.b[voxel_index(j, cfg.lattice)];
    return cfg.lambda * p * ai * bj;
}

void fire_reaction(MultiState& s, const MultiConfig& cfg, const GammaTable& gamma,
                   Voxel i, Voxel j, RngStream& rng, PropensityIndex* index,
                   std::vector<Event>* log)
{
    const LatticeSpec& lat = cfg.lattice;
    const int ii = voxel_index(i, lat);
    const int jj = voxel_index(j, lat);
    if (s.a[ii] == 0 || s.b[jj] == 0)
        throw std::invalid_argument("fire_reaction: no reactant pair at (i, j)");

    --s.a[ii];
    --s.b[jj];

    std::optional<int> product;
    Voxel pv = i;
    if (cfg.make_product) {
        const Vec2i r = gamma.sample({j.ix - i.ix, j.iy - i.iy}, rng.uniform());
        // Near a wall the placement voxel may fall outside; clamp it back in.
        pv = {std::clamp(i.ix + r.x, 0, lat.N - 1), std::clamp(i.iy + r.y, 0, lat.N - 1)};
        const int pp = voxel_index(pv, lat);
        ++s.c[pp];
        product = pp;
    }
    if (index)
        index->apply_reaction(ii, jj, product, s);
    if (log)
        log->push_back({s.t, EventKind::React, i, pv});
}

MultiResult simulate_multi(const MultiConfig& cfg, const PhiTable& table,
                           const GammaTable& gamma, uint64_t master_seed,
                           uint64_t replicate)
{
    const LatticeSpec& lat = cfg.lattice;
    if (lat.N < 1 || !(lat.L > 0.0))
        throw std::invalid_argument("simulate_multi: bad lattice");
    if (!(cfg.t_end >= 0.0))
        throw std::invalid_argument("simulate_multi: t_end must be >= 0");

    RngStream rng(master_seed, replicate);

    MultiResult out;
    MultiState& s = out.state;
    s.a.assign(lat.voxel_count(), 0);
    s.b.assign(lat.voxel_count(), 0);
    s.c.assign(lat.voxel_count(), 0);
    for (uint64_t n = 0; n < cfg.a_total; ++n)
        ++s.a[static_cast<int>(rng.uniform_below(lat.N)) +
              lat.N * static_cast<int>(rng.uniform_below(lat.N))];
    for (uint64_t n = 0; n < cfg.b_total; ++n)
        ++s.b[static_cast<int>(rng.uniform_below(lat.N)) +
              lat.N * static_cast<int>(rng.uniform_below(lat.N))];
    for (uint64_t n = 0; n < cfg.c_total; ++n)
        ++s.c[static_cast<int>(rng.uniform_below(lat.N)) +
              lat.N * static_cast<int>(rng.uniform_below(lat.N))];

    PropensityIndex index(cfg, table, s);
    uint64_t since_audit = 0;

    for (;;) {
        if (cfg.max_events && s.events >= *cfg.max_events)
            break;
        const double grand = index.grand_total();
        if (!(grand > 0.0)) {
            s.t = cfg.t_end;
            break;
        }
        const double dt = rng.exponential(grand);
        if (s.t + dt > cfg.t_end) {
            s.t = cfg.t_end;
            break;
        }
        s.t += dt;

        double target = rng.uniform() * grand;
        bool handled = false;
        for (int sp = 0; sp < 3 && !handled; ++sp) {
            const double dtot = index.diffusion_total(sp);
            if (target < dtot) {
                const int from = index.sample_diffusion(sp, target);
                const Voxel v{from % lat.N, from / lat.N};
                const MoveList moves = allowed_moves(v, lat);
                const Voxel tv = moves.target[rng.uniform_below(moves.count)];
                const int to = voxel_index(tv, lat);
                auto& counts = species_counts(s, sp);
                --counts[from];
                ++counts[to];
                index.apply_hop(sp, from, to, s);
                if (cfg.log_hops)
                    out.events.push_back(
                        {s.t, static_cast<EventKind>(sp), v, tv});
                handled = true;
                break;
            }
            target -= dtot;
        }
        if (!handled) {
            // Reaction: pick the A voxel from the reaction tree, then a B
            // partner in proportion to phi * count.
            const int ii = index.sample_reaction_site(target);
            const Voxel i{ii % lat.N, ii / lat.N};
            const double wi = index.partner_weight(ii);
            double ptarget = rng.uniform() * wi;
            Voxel j{-1, -1};
            Voxel last_valid{-1, -1};
            for (const auto& [m, p] : index.support()) {
                const int jx = i.ix + m.x, jy = i.iy + m.y;
                if (!lat.contains(jx, jy))
                    continue;
                const uint32_t bj = s.b[jx + lat.N * jy];
                if (bj == 0)
                    continue;
                last_valid = {jx, jy};
                ptarget -= p * bj;
                if (ptarget < 0.0) {
                    j = last_valid;
                    break;
                }
            }
            if (j.ix < 0)
                j = last_valid;
            if (j.ix < 0)
                throw std::runtime_error(
                    "simulate_multi: reaction fired with no reachable B");
            fire_reaction(s, cfg, gamma, i, j, rng, &index, &out.events);
        }

        ++s.events;
        if (++since_audit >= index.audit_interval()) {
            index.audit_and_rebuild(s);
            since_audit = 0;
        }
    }
    return out;
}

}  // namespace crdme
