#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace crdme {

/// Configuration problem: unknown key, bad value, violated invariant. The
/// message names the offending key (and line, for file input).
class config_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class EngineKind { Crdme, Rdme, Bd, Multi };

std::string engine_name(EngineKind k);
EngineKind parse_engine(const std::string& name);

/// One simulation run. Lengths in um, times in s, rates per second.
struct SimConfig {
    EngineKind engine = EngineKind::Crdme;
    int N = 0;             // lattice voxels per edge (lattice engines)
    double L = 0.2;        // domain edge
    double D_A = 10.0;
    double D_B = 10.0;
    double D_C = 10.0;
    double lambda = 0.0;
    double rb = 1e-3;
    double k = 0.0;        // RDME rate constant; 0 = lambda * pi * rb^2
    double dt = 0.0;       // BD step (required for engine = bd)
    uint64_t replicates = 0;
    uint64_t seed = 1;
    int workers = 1;
    std::optional<double> t_max;
    double table_tol = 1e-11;
    std::filesystem::path out = "out";
    std::optional<std::filesystem::path> table_cache;  // default: out/tables

    // multiparticle engine
    uint64_t a_total = 0;
    uint64_t b_total = 0;
    uint64_t c_total = 0;
    bool make_product = true;
    bool log_hops = true;
    double t_end = 0.0;

    double h() const { return L / N; }
    double rho() const { return rb / h(); }

    std::filesystem::path cache_dir() const
    {
        return table_cache ? *table_cache : out / "tables";
    }
};

/// Parse `key = value` lines (UTF-8, # comments, blank lines ignored).
/// Unknown keys, duplicate keys, and malformed numbers are config_errors
/// naming the key and line number.
SimConfig parse_config(const std::filesystem::path& path);

/// Apply one key=value override (CLI flags funnel through here so the
/// validation story is identical for files and flags).
void apply_key(SimConfig& cfg, const std::string& key, const std::string& value,
               int line = 0);

/// Cross-field invariants: positive dimensions, rb < L for spatial engines,
/// dt required for bd, t_end required for multi, and so on. Throws
/// config_error naming the violated requirement.
void validate_config(const SimConfig& cfg);

/// Canonical `key = value` serialization of every resolved field, sorted by
/// key; doubles printed with 17 significant digits.
std::string canonical_serialization(const SimConfig& cfg);

/// FNV-1a 64-bit digest of the canonical serialization, as 16 hex digits.
std::string config_digest(const SimConfig& cfg);

/// Mesh/parameter sweep: the cross product of engines, lambdas, and N values
/// over a base configuration.
struct SweepSpec {
    SimConfig base;
    std::vector<EngineKind> engines;
    std::vector<double> lambdas;
    std::vector<int> Ns;
};

/// Read a sweep description: the base keys plus sweep_engines, sweep_N,
/// sweep_lambda (comma-separated lists).
SweepSpec parse_sweep(const std::filesystem::path& path);

}  // namespace crdme
