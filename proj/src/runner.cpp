#include "crdme/runner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "crdme/bd_engine.hpp"
#include "crdme/multi_engine.hpp"
#include "crdme/pair_engine.hpp"
#include "crdme/table_io.hpp"

namespace crdme {

namespace fs = std::filesystem;

namespace {

std::ofstream open_out(const fs::path& path)
{
    if (path.has_parent_path())
        fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot open for writing: " + path.string());
    return out;
}

void write_samples_csv(const fs::path& path, const std::vector<Sample>& samples)
{
    std::ofstream out = open_out(path);
    out << "replicate,time_s,censored\n";
    for (size_t r = 0; r < samples.size(); ++r)
        out << r << ',' << format_double(samples[r].time) << ','
            << (samples[r].censored ? 1 : 0) << '\n';
}

void write_summary_csv(const fs::path& path, const SimConfig& cfg,
                       const ReactionTimeSamples& samples)
{
    const bool lattice = cfg.engine != EngineKind::Bd;
    std::ofstream out = open_out(path);
    out << "engine,N,h_um,rho,lambda_per_s,replicates,mean_s,ci_half_s,seed\n";
    double mean = std::numeric_limits<double>::quiet_NaN();
    double half = std::numeric_limits<double>::quiet_NaN();
    if (!samples.times.empty() && samples.censored_count() == 0) {
        const MeanCi ci = mean_ci(samples);
        mean = ci.mean;
        half = ci.half_width;
    }
    out << engine_name(cfg.engine) << ',' << (lattice ? cfg.N : 0) << ','
        << format_double(lattice ? cfg.h() : 0.0) << ','
        << format_double(lattice ? cfg.rho() : 0.0) << ','
        << format_double(cfg.lambda) << ',' << samples.replicates << ','
        << format_double(mean) << ',' << format_double(half) << ',' << cfg.seed << '\n';
}

void write_survival_csv(const fs::path& path, const EcdfCurve& curve)
{
    std::ofstream out = open_out(path);
    out << "t_s,survival,lo95,hi95\n";
    for (size_t i = 0; i < curve.t.size(); ++i)
        out << format_double(curve.t[i]) << ',' << format_double(1.0 - curve.f[i]) << ','
            << format_double(1.0 - curve.hi95[i]) << ','
            << format_double(1.0 - curve.lo95[i]) << '\n';
}

const char* event_kind_name(EventKind k)
{
    switch (k) {
    case EventKind::HopA:
        return "hop_A";
    case EventKind::HopB:
        return "hop_B";
    case EventKind::HopC:
        return "hop_C";
    case EventKind::React:
        return "react";
    }
    return "?";
}

void write_events_csv(const fs::path& path, const std::vector<Event>& events)
{
    std::ofstream out = open_out(path);
    out << "t_s,kind,src_ix,src_iy,dst_ix,dst_iy\n";
    for (const Event& e : events)
        out << format_double(e.t) << ',' << event_kind_name(e.kind) << ',' << e.src.ix
            << ',' << e.src.iy << ',' << e.dst.ix << ',' << e.dst.iy << '\n';
}

void write_final_state_csv(const fs::path& path, const MultiState& s,
                           const LatticeSpec& lat)
{
    std::ofstream out = open_out(path);
    out << "ix,iy,a,b,c\n";
    for (int ix = 0; ix < lat.N; ++ix)
        for (int iy = 0; iy < lat.N; ++iy) {
            const int i = voxel_index({ix, iy}, lat);
            out << ix << ',' << iy << ',' << s.a[i] << ',' << s.b[i] << ',' << s.c[i]
                << '\n';
        }
}

void write_resolved_config(const fs::path& path, const SimConfig& cfg,
                           const std::string& digest)
{
    std::ofstream out = open_out(path);
    out << "# resolved configuration (digest " << digest << ")\n";
    out << canonical_serialization(cfg);
    out << "seed = " << cfg.seed << "\n";
    out << "workers = " << cfg.workers << "\n";
    out << "out = " << cfg.out.string() << "\n";
}

PairConfig to_pair_config(const SimConfig& cfg)
{
    PairConfig pc;
    pc.lattice = {cfg.L, cfg.N};
    pc.D_A = cfg.D_A;
    pc.D_B = cfg.D_B;
    pc.lambda = cfg.lambda;
    pc.rb = cfg.rb;
    pc.kind = cfg.engine == EngineKind::Rdme ? PairEngineKind::Rdme : PairEngineKind::Crdme;
    pc.k = cfg.k;
    pc.t_max = cfg.t_max;
    return pc;
}

}  // namespace

RunResult run(const SimConfig& cfg)
{
    validate_config(cfg);
    const std::string digest = config_digest(cfg);

    RunResult result;
    result.dir = cfg.out;
    result.digest = digest;
    fs::create_directories(cfg.out);
    write_resolved_config(cfg.out / "config_resolved.cfg", cfg, digest);

    std::vector<Sample> samples;

    switch (cfg.engine) {
    case EngineKind::Crdme:
    case EngineKind::Rdme: {
        PairConfig pc = to_pair_config(cfg);
        // RDME never reads phi, but CRDME tables come from the cache.
        PhiTable table = cfg.engine == EngineKind::Crdme
                             ? cached_phi_table(cfg.cache_dir(), cfg.rho(), cfg.table_tol)
                             : PhiTable(cfg.rho(), 0, {0.0});
        if (cfg.replicates > 0)
            samples = run_pair_replicates(pc, table, cfg.replicates, cfg.seed, cfg.workers);
        break;
    }
    case EngineKind::Bd: {
        BdConfig bc;
        bc.L = cfg.L;
        bc.D_A = cfg.D_A;
        bc.D_B = cfg.D_B;
        bc.lambda = cfg.lambda;
        bc.rb = cfg.rb;
        bc.dt = cfg.dt;
        bc.t_max = cfg.t_max;
        if (cfg.replicates > 0)
            samples = run_bd_replicates(bc, cfg.replicates, cfg.seed, cfg.workers);
        break;
    }
    case EngineKind::Multi: {
        MultiConfig mc;
        mc.lattice = {cfg.L, cfg.N};
        mc.D_A = cfg.D_A;
        mc.D_B = cfg.D_B;
        mc.D_C = cfg.D_C;
        mc.lambda = cfg.lambda;
        mc.rb = cfg.rb;
        mc.a_total = cfg.a_total;
        mc.b_total = cfg.b_total;
        mc.c_total = cfg.c_total;
        mc.make_product = cfg.make_product;
        mc.log_hops = cfg.log_hops;
        mc.t_end = cfg.t_end;
        const PhiTable table = cached_phi_table(cfg.cache_dir(), cfg.rho(), cfg.table_tol);
        const GammaTable gamma = cached_gamma_table(cfg.cache_dir(), table, cfg.table_tol);
        const MultiResult mr = simulate_multi(mc, table, gamma, cfg.seed);
        write_events_csv(cfg.out / "events.csv", mr.events);
        write_final_state_csv(cfg.out / "final_state.csv", mr.state, mc.lattice);
        write_samples_csv(cfg.out / "samples.csv", {});
        return result;
    }
    }

    write_samples_csv(cfg.out / "samples.csv", samples);
    result.replicates = samples.size();
    if (!samples.empty()) {
        const ReactionTimeSamples rts = ReactionTimeSamples::from(samples, digest, cfg.seed);
        result.censored = rts.censored_count();
        write_summary_csv(cfg.out / "summary.csv", cfg, rts);
        write_survival_csv(cfg.out / "survival.csv", ecdf(rts));
        if (result.censored == 0)
            result.mean = mean_ci(rts);
    }
    return result;
}

SweepResult sweep(const SweepSpec& spec)
{
    SweepResult result;
    fs::create_directories(spec.base.out);

    // Shared cache for all points unless the base config pins one.
    const fs::path cache =
        spec.base.table_cache ? *spec.base.table_cache : spec.base.out / "tables";

    int idx = 0;
    for (EngineKind engine : spec.engines) {
        for (double lambda : spec.lambdas) {
            for (int n : spec.Ns) {
                SweepPoint point;
                point.cfg = spec.base;
                point.cfg.engine = engine;
                point.cfg.lambda = lambda;
                point.cfg.N = n;
                point.cfg.table_cache = cache;
                // Independent but reproducible seed per point.
                point.cfg.seed = RngStream(spec.base.seed, 0x73776565700000ull + idx).next_u64();
                char sub[96];
                std::snprintf(sub, sizeof sub, "point_%03d_%s_N%d_lam%g", idx,
                              engine_name(engine).c_str(), n, lambda);
                point.cfg.out = spec.base.out / sub;
                point.dir = point.cfg.out;
                try {
                    const RunResult r = run(point.cfg);
                    point.mean = r.mean;
                } catch (const std::exception& e) {
                    point.failed = true;
                    point.error = e.what();
                    ++result.failures;
                }
                result.points.push_back(std::move(point));
                ++idx;
            }
        }
    }

    // Combined summary: one row per successful point, in point order.
    {
        std::ofstream out = open_out(spec.base.out / "summary.csv");
        out << "engine,N,h_um,rho,lambda_per_s,replicates,mean_s,ci_half_s,seed\n";
        for (const SweepPoint& p : result.points) {
            if (p.failed)
                continue;
            const SimConfig& c = p.cfg;
            const bool lattice = c.engine != EngineKind::Bd;
            out << engine_name(c.engine) << ',' << (lattice ? c.N : 0) << ','
                << format_double(lattice ? c.h() : 0.0) << ','
                << format_double(lattice ? c.rho() : 0.0) << ',' << format_double(c.lambda)
                << ',' << c.replicates << ','
                << format_double(p.mean ? p.mean->mean
                                        : std::numeric_limits<double>::quiet_NaN())
                << ','
                << format_double(p.mean ? p.mean->half_width
                                        : std::numeric_limits<double>::quiet_NaN())
                << ',' << c.seed << '\n';
        }
    }

    if (result.failures > 0) {
        std::ofstream out = open_out(spec.base.out / "failures.csv");
        out << "dir,error\n";
        for (const SweepPoint& p : result.points)
            if (p.failed)
                out << p.dir.filename().string() << ",\"" << p.error << "\"\n";
    }

    // Mesh-refinement diagnostics per (engine, lambda) with the N list sorted
    // ascending: absolute successive mean differences and the ln(1/h) fit.
    {
        std::ofstream diffs = open_out(spec.base.out / "successive_diffs.csv");
        diffs << "engine,lambda_per_s,N_coarse,N_fine,h_fine_um,abs_diff_s\n";
        std::ofstream fits = open_out(spec.base.out / "divergence_fit.csv");
        fits << "engine,lambda_per_s,slope,intercept,r2\n";
        for (EngineKind engine : spec.engines) {
            for (double lambda : spec.lambdas) {
                std::vector<int> ns;
                std::vector<double> means;
                std::vector<double> hs;
                for (const SweepPoint& p : result.points) {
                    if (p.failed || !p.mean || p.cfg.engine != engine ||
                        p.cfg.lambda != lambda)
                        continue;
                    ns.push_back(p.cfg.N);
                    means.push_back(p.mean->mean);
                    hs.push_back(p.cfg.h());
                }
                // points were generated with Ns in spec order; sort by N
                std::vector<size_t> ord(ns.size());
                for (size_t i = 0; i < ord.size(); ++i)
                    ord[i] = i;
                std::sort(ord.begin(), ord.end(),
                          [&](size_t a, size_t b) { return ns[a] < ns[b]; });
                std::vector<double> sm, sh;
                std::vector<int> sn;
                for (size_t i : ord) {
                    sm.push_back(means[i]);
                    sh.push_back(hs[i]);
                    sn.push_back(ns[i]);
                }
                if (sm.size() >= 2) {
                    const std::vector<double> d = successive_diffs(sm);
                    for (size_t i = 0; i < d.size(); ++i)
                        diffs << engine_name(engine) << ',' << format_double(lambda) << ','
                              << sn[i] << ',' << sn[i + 1] << ',' << format_double(sh[i + 1])
                              << ',' << format_double(d[i]) << '\n';
                    if (sh.front() != sh.back()) {
                        const LineFit fit = log_divergence_fit(sh, sm);
                        fits << engine_name(engine) << ',' << format_double(lambda) << ','
                             << format_double(fit.slope) << ',' << format_double(fit.intercept)
                             << ',' << format_double(fit.r2) << '\n';
                    }
                }
            }
        }
    }

    // Table diagnostics: how the same-voxel and first-neighbor fractions move
    // across the sweep's meshes.
    if (spec.base.engine != EngineKind::Bd) {
        std::ofstream out = open_out(spec.base.out / "phi_diag.csv");
        out << "N,h_um,rho,phi00,phi10\n";
        for (int n : spec.Ns) {
            if (n < 1)
                continue;  // the point itself already failed validation
            SimConfig c = spec.base;
            c.N = n;
            const double rho = c.rho();
            const PhiTable t = cached_phi_table(cache, rho, c.table_tol);
            out << n << ',' << format_double(c.h()) << ',' << format_double(rho) << ','
                << format_double(t.at(0, 0)) << ',' << format_double(t.at(1, 0)) << '\n';
        }
    }

    return result;
}

}  // namespace crdme
