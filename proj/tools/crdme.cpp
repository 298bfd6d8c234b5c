// crdme: 2-d reaction-diffusion simulation toolkit.
//
// Subcommands: phi-table, gamma-table, simulate, sweep, validate.
// Exit codes: 0 success, 1 configuration error, 2 numerical failure,
// 3 partial sweep failure.

#include <cmath>
#include <cstdio>
#include <iostream>

#include <CLI11.hpp>

#include "crdme/config.hpp"
#include "crdme/gamma_table.hpp"
#include "crdme/pair_engine.hpp"
#include "crdme/quadrature.hpp"
#include "crdme/runner.hpp"
#include "crdme/table_io.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitNumeric = 2;
constexpr int kExitPartial = 3;

struct Overrides {
    std::vector<std::pair<std::string, std::string>> kv;

    void add_flag(CLI::App* cmd, const std::string& key, const std::string& desc)
    {
        auto apply = [this, key](const std::string& v) { kv.push_back({key, v}); };
        cmd->add_option_function<std::string>("--" + key, apply, desc);
    }
};

crdme::SimConfig load_config(const std::string& config_path, const Overrides& ov)
{
    crdme::SimConfig cfg;
    if (!config_path.empty())
        cfg = crdme::parse_config(config_path);
    for (const auto& [k, v] : ov.kv)
        crdme::apply_key(cfg, k, v);
    crdme::validate_config(cfg);
    return cfg;
}

void register_overrides(CLI::App* cmd, Overrides& ov)
{
    ov.add_flag(cmd, "engine", "crdme | rdme | bd | multi");
    ov.add_flag(cmd, "N", "voxels per edge");
    ov.add_flag(cmd, "L", "domain edge, um");
    ov.add_flag(cmd, "D_A", "diffusion constant of A, um^2/s");
    ov.add_flag(cmd, "D_B", "diffusion constant of B, um^2/s");
    ov.add_flag(cmd, "D_C", "diffusion constant of C, um^2/s");
    ov.add_flag(cmd, "lambda", "reaction intensity, 1/s");
    ov.add_flag(cmd, "rb", "reaction radius, um");
    ov.add_flag(cmd, "k", "RDME rate constant, um^2/s (0 = lambda pi rb^2)");
    ov.add_flag(cmd, "dt", "BD time step, s");
    ov.add_flag(cmd, "replicates", "number of replicates");
    ov.add_flag(cmd, "seed", "master seed");
    ov.add_flag(cmd, "workers", "worker threads (0 = hardware)");
    ov.add_flag(cmd, "t_max", "censoring time cap, s");
    ov.add_flag(cmd, "table_tol", "table quadrature tolerance");
    ov.add_flag(cmd, "out", "output directory");
    ov.add_flag(cmd, "table_cache", "table cache directory");
    ov.add_flag(cmd, "a_total", "initial A count (multi)");
    ov.add_flag(cmd, "b_total", "initial B count (multi)");
    ov.add_flag(cmd, "c_total", "initial C count (multi)");
    ov.add_flag(cmd, "make_product", "produce C on reaction (multi)");
    ov.add_flag(cmd, "log_hops", "record hop events (multi)");
    ov.add_flag(cmd, "t_end", "simulation end time (multi), s");
}

int run_validate()
{
    using namespace crdme;
    // Fast invariant pass over a small table pair plus a determinism probe.
    const PhiTable phi_half = build_phi_table(0.5);
    validate_phi_table(phi_half);
    if (phi_half.entries().size() != 9)
        throw std::runtime_error("validate: rho = 0.5 support should have 9 offsets");
    const PhiTable phi125 = build_phi_table(1.25);
    validate_phi_table(phi125);
    const GammaTable gamma = build_gamma_table(phi125);
    validate_gamma_table(gamma, phi125);
    for (const auto& [d, row] : gamma.canonical_rows())
        if (std::fabs(row.raw_sum - 1.0) > 1e-8)
            throw std::runtime_error("validate: gamma row renormalization exceeds 1e-8");

    PairConfig pc;
    pc.lattice = {0.016, 8};
    pc.lambda = 1e9;
    pc.rb = 1e-3;
    std::vector<Sample> one = run_pair_replicates(pc, phi_half, 64, 42, 1);
    std::vector<Sample> two = run_pair_replicates(pc, phi_half, 64, 42, 4);
    for (size_t i = 0; i < one.size(); ++i)
        if (one[i].time != two[i].time || one[i].censored != two[i].censored)
            throw std::runtime_error("validate: replicate results depend on worker count");
    std::puts("validate: all invariant checks passed");
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"2-d reaction-diffusion simulation toolkit (CRDME, RDME, BD)"};
    app.require_subcommand(1);

    // phi-table
    auto* phi_cmd = app.add_subcommand("phi-table", "build a phi table and write it as CSV");
    double phi_rho = 0.0, phi_tol = 1e-11;
    std::string phi_out = "phi.csv";
    phi_cmd->add_option("--rho", phi_rho, "reaction radius over voxel edge")->required();
    phi_cmd->add_option("--tol", phi_tol, "quadrature tolerance");
    phi_cmd->add_option("--out", phi_out, "output CSV path");

    // gamma-table
    auto* gamma_cmd =
        app.add_subcommand("gamma-table", "build a placement table and write it as CSV");
    double gamma_rho = 0.0, gamma_tol = 1e-11;
    std::string gamma_out = "gamma.csv";
    gamma_cmd->add_option("--rho", gamma_rho, "reaction radius over voxel edge")->required();
    gamma_cmd->add_option("--tol", gamma_tol, "quadrature tolerance");
    gamma_cmd->add_option("--out", gamma_out, "output CSV path");

    // simulate
    auto* sim_cmd = app.add_subcommand("simulate", "run one configured simulation");
    std::string sim_config;
    sim_cmd->add_option("--config", sim_config, "key = value configuration file");
    Overrides sim_ov;
    register_overrides(sim_cmd, sim_ov);

    // sweep
    auto* sweep_cmd = app.add_subcommand("sweep", "run a mesh/parameter sweep");
    std::string sweep_config;
    sweep_cmd->add_option("--config", sweep_config, "configuration file with sweep_* lists")
        ->required();
    Overrides sweep_ov;
    register_overrides(sweep_cmd, sweep_ov);

    // validate
    app.add_subcommand("validate", "run the built-in invariant suite");

    CLI11_PARSE(app, argc, argv);

    try {
        if (phi_cmd->parsed()) {
            const crdme::PhiTable t = crdme::build_phi_table(phi_rho, phi_tol);
            crdme::write_phi_csv(phi_out, t);
            std::printf("phi table rho=%g: %zu offsets -> %s\n", phi_rho,
                        t.entries().size(), phi_out.c_str());
            return kExitOk;
        }
        if (gamma_cmd->parsed()) {
            const crdme::PhiTable t = crdme::build_phi_table(gamma_rho, gamma_tol);
            const crdme::GammaTable g = crdme::build_gamma_table(t, gamma_tol);
            crdme::write_gamma_csv(gamma_out, g);
            std::printf("gamma table rho=%g: %zu rows -> %s\n", gamma_rho,
                        g.canonical_rows().size(), gamma_out.c_str());
            return kExitOk;
        }
        if (sim_cmd->parsed()) {
            const crdme::SimConfig cfg = load_config(sim_config, sim_ov);
            const crdme::RunResult r = crdme::run(cfg);
            if (r.mean)
                std::printf("%s: %llu replicates, mean %.6g s +- %.3g s -> %s\n",
                            crdme::engine_name(cfg.engine).c_str(),
                            static_cast<unsigned long long>(r.replicates), r.mean->mean,
                            r.mean->half_width, r.dir.string().c_str());
            else
                std::printf("%s: %llu replicates (%llu censored) -> %s\n",
                            crdme::engine_name(cfg.engine).c_str(),
                            static_cast<unsigned long long>(r.replicates),
                            static_cast<unsigned long long>(r.censored),
                            r.dir.string().c_str());
            return kExitOk;
        }
        if (sweep_cmd->parsed()) {
            crdme::SweepSpec spec = crdme::parse_sweep(sweep_config);
            for (const auto& [k, v] : sweep_ov.kv)
                crdme::apply_key(spec.base, k, v);
            const crdme::SweepResult r = crdme::sweep(spec);
            std::printf("sweep: %zu points, %d failed -> %s\n", r.points.size(),
                        r.failures, spec.base.out.string().c_str());
            return r.failures == 0 ? kExitOk : kExitPartial;
        }
        return run_validate();
    } catch (const crdme::config_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const crdme::quadrature_error& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return kExitNumeric;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumeric;
    }
}
