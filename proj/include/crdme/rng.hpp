#pragma once

#include <cstdint>

namespace crdme {

/// 64-bit finalizer used both as the stream seeder and the generator step.
uint64_t mix64(uint64_t x);

/// Deterministic random stream for one replicate.
///
/// Replicate r of a run with a given master seed always produces the same
/// sequence, no matter which worker thread executes it or in what order.
/// The generator is splitmix64: the state advances by a fixed odd constant
/// and each output is a strong 64-bit mix of the state. Streams for distinct
/// (seed, replicate) pairs start at well-separated states.
///
/// All distribution transforms are implemented here rather than with
/// std::<distribution> so that output does not depend on the standard
/// library in use.
class RngStream {
public:
    RngStream(uint64_t master_seed, uint64_t replicate);

    uint64_t next_u64();

    /// Uniform on [0, 1), 53-bit resolution.
    double uniform();

    /// Uniform on (0, 1]; safe as an exponential/log argument.
    double uniform_pos();

    /// Uniform integer in [0, n), n >= 1. Lemire rejection, unbiased.
    uint64_t uniform_below(uint64_t n);

    /// Exponential with the given rate (mean 1/rate).
    double exponential(double rate);

    /// Standard normal pair, Marsaglia polar method.
    void normal_pair(double* z0, double* z1);

private:
    uint64_t state_;
};

}  // namespace crdme
