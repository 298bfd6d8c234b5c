#include "crdme/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace crdme {

namespace {
constexpr uint64_t kGolden = 0x9E3779B97F4A7C15ull;
}

uint64_t mix64(uint64_t x)
{
    x ^= x >> 30;
    x *= 0xBF58476D1CE4E5B9ull;
    x ^= x >> 27;
    x *= 0x94D049BB133111EBull;
    x ^= x >> 31;
    return x;
}

RngStream::RngStream(uint64_t master_seed, uint64_t replicate)
{
    // Two mixing rounds decorrelate nearby (seed, replicate) pairs.
    state_ = mix64(master_seed ^ mix64(replicate * kGolden + 1));
}

uint64_t RngStream::next_u64()
{
    state_ += kGolden;
    return mix64(state_);
}

double RngStream::uniform()
{
    return (next_u64() >> 11) * 0x1.0p-53;
}

double RngStream::uniform_pos()
{
    return 1.0 - uniform();
}

uint64_t RngStream::uniform_below(uint64_t n)
{
    if (n == 0)
        throw std::invalid_argument("uniform_below: n must be >= 1");
    // Lemire's multiply-shift with rejection on the low word.
    uint64_t x = next_u64();
    __uint128_t m = static_cast<__uint128_t>(x) * n;
    auto lo = static_cast<uint64_t>(m);
    if (lo < n) {
        const uint64_t thresh = -n % n;
        while (lo < thresh) {
            x = next_u64();
            m = static_cast<__uint128_t>(x) * n;
            lo = static_cast<uint64_t>(m);
        }
    }
    return static_cast<uint64_t>(m >> 64);
}

double RngStream::exponential(double rate)
{
    if (!(rate > 0.0))
        throw std::invalid_argument("exponential: rate must be positive");
    return -std::log(uniform_pos()) / rate;
}

void RngStream::normal_pair(double* z0, double* z1)
{
    double u, v, s;
    do {
        u = 2.0 * uniform() - 1.0;
        v = 2.0 * uniform() - 1.0;
        s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double m = std::sqrt(-2.0 * std::log(s) / s);
    *z0 = u * m;
    *z1 = v * m;
}

}  // namespace crdme
