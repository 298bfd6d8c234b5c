#include "crdme/table_io.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <numbers>
#include <sstream>
#include <vector>

namespace crdme {

namespace fs = std::filesystem;

std::string format_double(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

std::ofstream open_out(const fs::path& path)
{
    if (path.has_parent_path())
        fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);  // binary: LF everywhere
    if (!out)
        throw std::runtime_error("cannot open for writing: " + path.string());
    return out;
}

std::vector<std::vector<std::string>> read_csv_rows(const fs::path& path,
                                                    const std::string& expect_header)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open for reading: " + path.string());
    std::string line;
    if (!std::getline(in, line) || line != expect_header)
        throw std::runtime_error("bad header in " + path.string());
    std::vector<std::vector<std::string>> rows;
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        std::vector<std::string> fields;
        std::stringstream ss(line);
        std::string field;
        while (std::getline(ss, field, ','))
            fields.push_back(field);
        rows.push_back(std::move(fields));
    }
    return rows;
}

double parse_double(const std::string& s)
{
    size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size())
        throw std::runtime_error("bad numeric field: " + s);
    return v;
}

}  // namespace

void write_phi_csv(const fs::path& path, const PhiTable& table)
{
    std::ofstream out = open_out(path);
    out << "mx,my,phi\n";
    for (const PhiEntry& e : table.entries())
        out << e.m.x << ',' << e.m.y << ',' << format_double(e.value) << '\n';
}

PhiTable read_phi_csv(const fs::path& path, double rho)
{
    const auto rows = read_csv_rows(path, "mx,my,phi");
    std::map<Vec2i, double> vals;
    for (const auto& r : rows) {
        if (r.size() != 3)
            throw std::runtime_error("phi csv: malformed row in " + path.string());
        vals[{std::stoi(r[0]), std::stoi(r[1])}] = parse_double(r[2]);
    }
    const int cutoff = static_cast<int>(std::floor(rho)) + 1;
    std::vector<double> canon(static_cast<size_t>(cutoff + 1) * (cutoff + 2) / 2, 0.0);
    size_t expected = 0;
    for (int mx = -cutoff; mx <= cutoff; ++mx)
        for (int my = -cutoff; my <= cutoff; ++my)
            if (voxel_gap({mx, my}) <= rho)
                ++expected;
    if (vals.size() != expected)
        throw std::runtime_error("phi csv: support does not match rho in " + path.string());
    for (int mx = 0; mx <= cutoff; ++mx) {
        for (int my = 0; my <= mx; ++my) {
            if (voxel_gap({mx, my}) > rho)
                continue;
            const auto it = vals.find({mx, my});
            if (it == vals.end())
                throw std::runtime_error("phi csv: missing canonical offset in " +
                                         path.string());
            canon[static_cast<size_t>(mx) * (mx + 1) / 2 + my] = it->second;
        }
    }
    PhiTable table(rho, cutoff, std::move(canon));
    // Loaded data must agree with its own symmetric copies bit for bit.
    for (const auto& [m, v] : vals)
        if (table.at(m) != v)
            throw std::runtime_error("phi csv: symmetry violation in " + path.string());
    validate_phi_table(table);
    return table;
}

void write_gamma_csv(const fs::path& path, const GammaTable& table)
{
    // Expand rows over the full dihedral orbit so the file stands alone.
    std::map<std::array<int, 4>, double> flat;
    for (const auto& [dc, row] : table.canonical_rows()) {
        (void)row;
        const int ax = dc.x, ay = dc.y;
        const int sx[] = {1, -1};
        for (int fx : sx) {
            for (int fy : sx) {
                for (int sw = 0; sw < 2; ++sw) {
                    Vec2i d = sw ? Vec2i{fy * ay, fx * ax} : Vec2i{fx * ax, fy * ay};
                    const GammaRow full = table.row(d);
                    for (const GammaEntry& e : full.entries)
                        flat[{d.x, d.y, e.r.x, e.r.y}] = e.p;
                }
            }
        }
    }
    std::ofstream out = open_out(path);
    out << "dx,dy,rx,ry,gamma\n";
    for (const auto& [k, v] : flat)
        out << k[0] << ',' << k[1] << ',' << k[2] << ',' << k[3] << ','
            << format_double(v) << '\n';
}

GammaTable read_gamma_csv(const fs::path& path, const PhiTable& phi_table)
{
    const auto rows = read_csv_rows(path, "dx,dy,rx,ry,gamma");
    std::map<Vec2i, GammaRow> canonical;
    for (const auto& r : rows) {
        if (r.size() != 5)
            throw std::runtime_error("gamma csv: malformed row in " + path.string());
        const Vec2i d{std::stoi(r[0]), std::stoi(r[1])};
        const Vec2i rr{std::stoi(r[2]), std::stoi(r[3])};
        if (d.x < 0 || d.y < 0 || d.y > d.x)
            continue;  // keep canonical octant rows only
        GammaRow& row = canonical[d];
        row.d = d;
        row.entries.push_back({rr, parse_double(r[4])});
    }
    for (auto& [d, row] : canonical) {
        row.phi = phi_table.at(d);
        row.raw_sum = std::numeric_limits<double>::quiet_NaN();
        std::sort(row.entries.begin(), row.entries.end(),
                  [](const GammaEntry& a, const GammaEntry& b) { return a.r < b.r; });
    }
    GammaTable table(phi_table.rho(), std::move(canonical));
    validate_gamma_table(table, phi_table);
    return table;
}

void validate_phi_table(const PhiTable& table)
{
    const double rho = table.rho();
    for (const PhiEntry& e : table.entries()) {
        if (!(e.value >= 0.0) || !(e.value <= 1.0))
            throw std::runtime_error("phi table: value outside [0, 1]");
        if (table.at(e.m) != table.at({std::abs(e.m.x), std::abs(e.m.y)}))
            throw std::runtime_error("phi table: dihedral symmetry violated");
    }
    // Axis monotonicity (allow quadrature-tolerance slack).
    for (int mx = 0; mx + 1 <= table.cutoff(); ++mx)
        if (table.at(mx + 1, 0) > table.at(mx, 0) + 1e-9)
            throw std::runtime_error("phi table: not monotone along the axis");
    const double sum = table.support_sum();
    const double expect = std::numbers::pi * rho * rho;
    if (std::fabs(sum - expect) > 1e-7 * expect)
        throw std::runtime_error("phi table: support sum deviates from pi rho^2");
}

void validate_gamma_table(const GammaTable& table, const PhiTable& phi_table)
{
    size_t rows = 0;
    for (const Vec2i d : phi_table.canonical_offsets()) {
        if (phi_table.at(d) <= 0.0)
            continue;
        const GammaRow row = table.row(d);  // throws if missing
        ++rows;
        double sum = 0.0;
        for (const GammaEntry& e : row.entries) {
            if (!(e.p >= 0.0) || !(e.p <= 1.0))
                throw std::runtime_error("gamma table: entry outside [0, 1]");
            sum += e.p;
        }
        if (sum != 1.0)
            throw std::runtime_error("gamma table: row does not sum to exactly 1");
    }
    if (rows == 0)
        throw std::runtime_error("gamma table: empty");
}

std::string table_cache_key(double rho, double tol)
{
    char buf[80];
    std::snprintf(buf, sizeof buf, "rho%.12g_tol%g", rho, tol);
    return buf;
}

PhiTable cached_phi_table(const fs::path& cache_dir, double rho, double tol)
{
    const fs::path file = cache_dir / ("phi_" + table_cache_key(rho, tol) + ".csv");
    if (fs::exists(file))
        return read_phi_csv(file, rho);
    PhiTable table = build_phi_table(rho, tol);
    write_phi_csv(file, table);
    return table;
}

GammaTable cached_gamma_table(const fs::path& cache_dir, const PhiTable& table,
                              double tol)
{
    const fs::path file =
        cache_dir / ("gamma_" + table_cache_key(table.rho(), tol) + ".csv");
    if (fs::exists(file))
        return read_gamma_csv(file, table);
    GammaTable gamma = build_gamma_table(table, tol);
    write_gamma_csv(file, gamma);
    return gamma;
}

}  // namespace crdme
