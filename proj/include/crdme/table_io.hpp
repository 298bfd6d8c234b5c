#pragma once

#include <filesystem>
#include <string>

#include "crdme/gamma_table.hpp"
#include "crdme/phi_table.hpp"

namespace crdme {

/// Format a double with 17 significant digits (%.17g): enough to round-trip
/// any IEEE double exactly, so files reload bit-identical.
std::string format_double(double v);

/// phi table CSV: header mx,my,phi; one row per offset of the full symmetric
/// expansion, sorted lexicographically by (mx, my).
void write_phi_csv(const std::filesystem::path& path, const PhiTable& table);

/// Reload a phi CSV written by write_phi_csv. rho must be supplied (the file
/// stores offsets and values only); the support is validated against it and
/// the symmetry/bound/sum invariants are checked. Throws on any mismatch.
PhiTable read_phi_csv(const std::filesystem::path& path, double rho);

/// gamma table CSV: header dx,dy,rx,ry,gamma; one row per (separation,
/// placement) pair of the full symmetric expansion, sorted lexicographically
/// by (dx, dy, rx, ry).
void write_gamma_csv(const std::filesystem::path& path, const GammaTable& table);

/// Reload a gamma CSV; rows must sum to exactly 1. raw_sum is not stored in
/// the file and reads back as NaN.
GammaTable read_gamma_csv(const std::filesystem::path& path, const PhiTable& phi_table);

/// Invariant suites run on load (and usable from `validate`). Throw
/// std::runtime_error describing the first violated invariant.
void validate_phi_table(const PhiTable& table);
void validate_gamma_table(const GammaTable& table, const PhiTable& phi_table);

/// Cache filename stem for a (rho, tol) pair: rho is rounded to 12
/// significant digits so equivalent parameterizations share an entry.
std::string table_cache_key(double rho, double tol);

/// Fetch the phi table for (rho, tol) from cache_dir, building and storing it
/// on a miss. Loaded tables pass the invariant suite before use.
PhiTable cached_phi_table(const std::filesystem::path& cache_dir, double rho, double tol);

GammaTable cached_gamma_table(const std::filesystem::path& cache_dir,
                              const PhiTable& table, double tol);

}  // namespace crdme
