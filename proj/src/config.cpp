#include "crdme/config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include "crdme/table_io.hpp"

namespace crdme {

namespace {

std::string trim(const std::string& s)
{
    size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b])))
        ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1])))
        --e;
    return s.substr(b, e - b);
}

[[noreturn]] void fail(const std::string& key, int line, const std::string& what)
{
    std::ostringstream os;
    os << "config: key '" << key << "'";
    if (line > 0)
        os << " (line " << line << ")";
    os << ": " << what;
    throw config_error(os.str());
}

double to_double(const std::string& key, const std::string& v, int line)
{
    try {
        size_t pos = 0;
        const double x = std::stod(v, &pos);
        if (pos != v.size())
            fail(key, line, "trailing characters after number '" + v + "'");
        return x;
    } catch (const config_error&) {
        throw;
    } catch (...) {
        fail(key, line, "not a number: '" + v + "'");
    }
}

int64_t to_int(const std::string& key, const std::string& v, int line)
{
    try {
        size_t pos = 0;
        // Accept scientific notation for counts (1e4 replicates is natural).
        const double x = std::stod(v, &pos);
        if (pos != v.size())
            fail(key, line, "trailing characters after number '" + v + "'");
        const auto r = static_cast<int64_t>(x);
        if (static_cast<double>(r) != x)
            fail(key, line, "not an integer: '" + v + "'");
        return r;
    } catch (const config_error&) {
        throw;
    } catch (...) {
        fail(key, line, "not a number: '" + v + "'");
    }
}

bool to_bool(const std::string& key, const std::string& v, int line)
{
    if (v == "true" || v == "1" || v == "yes")
        return true;
    if (v == "false" || v == "0" || v == "no")
        return false;
    fail(key, line, "not a boolean: '" + v + "'");
}

}  // namespace

std::string engine_name(EngineKind k)
{
    switch (k) {
    case EngineKind::Crdme:
        return "crdme";
    case EngineKind::Rdme:
        return "rdme";
    case EngineKind::Bd:
        return "bd";
    case EngineKind::Multi:
        return "multi";
    }
    return "?";
}

EngineKind parse_engine(const std::string& name)
{
    if (name == "crdme")
        return EngineKind::Crdme;
    if (name == "rdme")
        return EngineKind::Rdme;
    if (name == "bd")
        return EngineKind::Bd;
    if (name == "multi")
        return EngineKind::Multi;
    throw config_error("config: key 'engine': unknown engine '" + name +
                       "' (expected crdme, rdme, bd, or multi)");
}

void apply_key(SimConfig& cfg, const std::string& key, const std::string& value,
               int line)
{
    const std::string v = trim(value);
    if (key == "engine")
        cfg.engine = parse_engine(v);
    else if (key == "N")
        cfg.N = static_cast<int>(to_int(key, v, line));
    else if (key == "L")
        cfg.L = to_double(key, v, line);
    else if (key == "D_A")
        cfg.D_A = to_double(key, v, line);
    else if (key == "D_B")
        cfg.D_B = to_double(key, v, line);
    else if (key == "D_C")
        cfg.D_C = to_double(key, v, line);
    else if (key == "lambda")
        cfg.lambda = to_double(key, v, line);
    else if (key == "rb")
        cfg.rb = to_double(key, v, line);
    else if (key == "k")
        cfg.k = to_double(key, v, line);
    else if (key == "dt")
        cfg.dt = to_double(key, v, line);
    else if (key == "replicates") {
        const int64_t r = to_int(key, v, line);
        if (r < 0)
            fail(key, line, "must be >= 0");
        cfg.replicates = static_cast<uint64_t>(r);
    } else if (key == "seed")
        cfg.seed = static_cast<uint64_t>(to_int(key, v, line));
    else if (key == "workers")
        cfg.workers = static_cast<int>(to_int(key, v, line));
    else if (key == "t_max")
        cfg.t_max = to_double(key, v, line);
    else if (key == "table_tol")
        cfg.table_tol = to_double(key, v, line);
    else if (key == "out")
        cfg.out = v;
    else if (key == "table_cache")
        cfg.table_cache = v;
    else if (key == "a_total")
        cfg.a_total = static_cast<uint64_t>(to_int(key, v, line));
    else if (key == "b_total")
        cfg.b_total = static_cast<uint64_t>(to_int(key, v, line));
    else if (key == "c_total")
        cfg.c_total = static_cast<uint64_t>(to_int(key, v, line));
    else if (key == "make_product")
        cfg.make_product = to_bool(key, v, line);
    else if (key == "log_hops")
        cfg.log_hops = to_bool(key, v, line);
    else if (key == "t_end")
        cfg.t_end = to_double(key, v, line);
    else
        fail(key, line, "unknown key");
}

namespace {

SimConfig parse_config_lines(const std::filesystem::path& path,
                             std::map<std::string, std::string>* extra_keys)
{
    std::ifstream in(path);
    if (!in)
        throw config_error("config: cannot open '" + path.string() + "'");
    SimConfig cfg;
    std::set<std::string> seen;
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        std::string s = raw;
        const size_t hash = s.find('#');
        if (hash != std::string::npos)
            s = s.substr(0, hash);
        s = trim(s);
        if (s.empty())
            continue;
        const size_t eq = s.find('=');
        if (eq == std::string::npos) {
            std::ostringstream os;
            os << "config: line " << line << ": expected 'key = value', got '" << trim(raw)
               << "'";
            throw config_error(os.str());
        }
        const std::string key = trim(s.substr(0, eq));
        const std::string value = trim(s.substr(eq + 1));
        if (key.empty())
            fail("(empty)", line, "missing key");
        if (!seen.insert(key).second)
            fail(key, line, "duplicate key");
        if (extra_keys && key.rfind("sweep_", 0) == 0) {
            (*extra_keys)[key] = value;
            continue;
        }
        apply_key(cfg, key, value, line);
    }
    return cfg;
}

}  // namespace

SimConfig parse_config(const std::filesystem::path& path)
{
    SimConfig cfg = parse_config_lines(path, nullptr);
    validate_config(cfg);
    return cfg;
}

void validate_config(const SimConfig& cfg)
{
    if (!(cfg.L > 0.0))
        throw config_error("config: key 'L': must be positive");
    if (!(cfg.rb > 0.0))
        throw config_error("config: key 'rb': must be positive");
    if (!(cfg.D_A >= 0.0) || !(cfg.D_B >= 0.0) || !(cfg.D_C >= 0.0))
        throw config_error("config: diffusion constants must be >= 0");
    if (!(cfg.lambda >= 0.0))
        throw config_error("config: key 'lambda': must be >= 0");
    if (cfg.k < 0.0)
        throw config_error("config: key 'k': must be >= 0");
    if (!(cfg.table_tol > 0.0))
        throw config_error("config: key 'table_tol': must be positive");
    if (cfg.workers < 0)
        throw config_error("config: key 'workers': must be >= 0");
    if (cfg.t_max && !(*cfg.t_max > 0.0))
        throw config_error("config: key 't_max': must be positive");

    const bool lattice_engine =
        cfg.engine == EngineKind::Crdme || cfg.engine == EngineKind::Rdme ||
        cfg.engine == EngineKind::Multi;
    if (lattice_engine) {
        if (cfg.N < 1)
            throw config_error("config: key 'N': lattice engines need N >= 1");
        if (!(cfg.rb < cfg.L))
            throw config_error("config: key 'rb': reaction radius must be smaller than L");
    }
    if (cfg.engine == EngineKind::Bd) {
        if (!(cfg.dt > 0.0))
            throw config_error("config: key 'dt': engine = bd requires a positive dt");
        if (!(cfg.rb < cfg.L))
            throw config_error("config: key 'rb': reaction radius must be smaller than L");
    }
    if (cfg.engine == EngineKind::Multi) {
        if (!(cfg.t_end > 0.0))
            throw config_error("config: key 't_end': engine = multi requires a positive t_end");
    }
}

std::string canonical_serialization(const SimConfig& cfg)
{
    std::map<std::string, std::string> kv;
    kv["engine"] = engine_name(cfg.engine);
    kv["N"] = std::to_string(cfg.N);
    kv["L"] = format_double(cfg.L);
    kv["D_A"] = format_double(cfg.D_A);
    kv["D_B"] = format_double(cfg.D_B);
    kv["D_C"] = format_double(cfg.D_C);
    kv["lambda"] = format_double(cfg.lambda);
    kv["rb"] = format_double(cfg.rb);
    kv["k"] = format_double(cfg.k);
    kv["dt"] = format_double(cfg.dt);
    kv["replicates"] = std::to_string(cfg.replicates);
    kv["t_max"] = cfg.t_max ? format_double(*cfg.t_max) : "none";
    kv["table_tol"] = format_double(cfg.table_tol);
    kv["a_total"] = std::to_string(cfg.a_total);
    kv["b_total"] = std::to_string(cfg.b_total);
    kv["c_total"] = std::to_string(cfg.c_total);
    kv["make_product"] = cfg.make_product ? "true" : "false";
    kv["log_hops"] = cfg.log_hops ? "true" : "false";
    kv["t_end"] = format_double(cfg.t_end);
    std::ostringstream os;
    for (const auto& [k, v] : kv)
        os << k << " = " << v << "\n";
    return os.str();
}

std::string config_digest(const SimConfig& cfg)
{
    const std::string s = canonical_serialization(cfg);
    uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char ch : s) {
        h ^= ch;
        h *= 0x100000001b3ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

SweepSpec parse_sweep(const std::filesystem::path& path)
{
    std::map<std::string, std::string> extra;
    SweepSpec spec;
    spec.base = parse_config_lines(path, &extra);

    auto split = [](const std::string& s) {
        std::vector<std::string> out;
        std::stringstream ss(s);
        std::string item;
        while (std::getline(ss, item, ','))
            out.push_back(trim(item));
        return out;
    };

    if (extra.count("sweep_engines"))
        for (const std::string& e : split(extra["sweep_engines"]))
            spec.engines.push_back(parse_engine(e));
    else
        spec.engines.push_back(spec.base.engine);

    if (extra.count("sweep_lambda"))
        for (const std::string& s : split(extra["sweep_lambda"]))
            spec.lambdas.push_back(to_double("sweep_lambda", s, 0));
    else
        spec.lambdas.push_back(spec.base.lambda);

    if (extra.count("sweep_N"))
        for (const std::string& s : split(extra["sweep_N"]))
            spec.Ns.push_back(static_cast<int>(to_int("sweep_N", s, 0)));
    else
        spec.Ns.push_back(spec.base.N);

    if (spec.Ns.empty() || spec.lambdas.empty() || spec.engines.empty())
        throw config_error("config: sweep lists must be non-empty");

    // Validate each point up front so a sweep fails fast on a bad plan.
    for (EngineKind e : spec.engines) {
        for (double lam : spec.lambdas) {
            for (int n : spec.Ns) {
                SimConfig probe = spec.base;
                probe.engine = e;
                probe.lambda = lam;
                probe.N = n;
                validate_config(probe);
            }
        }
    }
    return spec;
}

}  // namespace crdme
